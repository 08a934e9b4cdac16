//! Propositional data model: literals, clauses, CNF formulas, total
//! assignments and cubes (partial assignments over a decomposition set).
//!
//! Variables are 1-based to match DIMACS; 0 is reserved as the clause
//! terminator in the textual format.

use std::fmt;
use std::num::NonZeroI32;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("variable index 0 is reserved; variables start at 1")]
    ZeroVariable,
    #[error("clause contains both polarities of variable {0}")]
    Tautology(u32),
    #[error("variable {var} out of range (formula has {num_vars} variables)")]
    VarOutOfRange { var: u32, num_vars: u32 },
    #[error("assignment has {got} values but the formula has {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("duplicate variable {0} in cube")]
    DuplicateCubeVar(u32),
    #[error("cube values length {values} does not match variable count {vars}")]
    CubeLength { vars: usize, values: usize },
}

/// A literal: a 1-based variable index with a polarity. Stored in DIMACS
/// form (signed, nonzero) so interchange is free.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(NonZeroI32);

impl Lit {
    /// Builds a literal from a variable index (>= 1) and a polarity.
    ///
    /// Panics if `var` is 0 or exceeds `i32::MAX`; those are programming
    /// errors, not data errors.
    pub fn new(var: u32, positive: bool) -> Lit {
        assert!(var >= 1 && var <= i32::MAX as u32, "bad variable {var}");
        let signed = if positive { var as i32 } else { -(var as i32) };
        Lit(NonZeroI32::new(signed).unwrap())
    }

    pub fn positive(var: u32) -> Lit {
        Lit::new(var, true)
    }

    pub fn negative(var: u32) -> Lit {
        Lit::new(var, false)
    }

    /// Parses a DIMACS-form signed literal; 0 is rejected.
    pub fn from_dimacs(code: i32) -> Result<Lit, CnfError> {
        NonZeroI32::new(code).map(Lit).ok_or(CnfError::ZeroVariable)
    }

    pub fn to_dimacs(self) -> i32 {
        self.0.get()
    }

    pub fn var(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    pub fn negated(self) -> Lit {
        Lit(NonZeroI32::new(-self.0.get()).unwrap())
    }

    /// True iff this literal is satisfied by assigning `value` to its variable.
    pub fn satisfied_by(self, value: bool) -> bool {
        self.is_positive() == value
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        self.negated()
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.get())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.get())
    }
}

/// A disjunction of literals. Duplicate literals are dropped at
/// construction (first occurrence kept); clauses containing both
/// polarities of one variable are tautologies and are rejected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause, CnfError> {
        let mut out: Vec<Lit> = Vec::new();
        for lit in lits {
            if out.contains(&lit) {
                continue;
            }
            if out.contains(&lit.negated()) {
                return Err(CnfError::Tautology(lit.var()));
            }
            out.push(lit);
        }
        Ok(Clause { lits: out })
    }

    /// The empty clause: falsum.
    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Lit> {
        self.lits.iter()
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var()).max().unwrap_or(0)
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, lit) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{lit}")?;
        }
        write!(f, ")")
    }
}

/// A total assignment: one boolean per variable, index 0 holding variable 1.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Assignment {
        Assignment { bits }
    }

    pub fn all_false(num_vars: u32) -> Assignment {
        Assignment { bits: vec![false; num_vars as usize] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of a 1-based variable. Panics if out of range.
    pub fn value(&self, var: u32) -> bool {
        self.bits[(var - 1) as usize]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.bits[(var - 1) as usize] = value;
    }

    pub fn satisfies_lit(&self, lit: Lit) -> bool {
        lit.satisfied_by(self.value(lit.var()))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// One assignment to a decomposition set: distinct variables in ascending
/// order paired with a bit vector of equal length.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Cube {
    vars: Vec<u32>,
    values: Vec<bool>,
}

impl Cube {
    pub fn new(
        vars: impl IntoIterator<Item = u32>,
        values: impl IntoIterator<Item = bool>,
    ) -> Result<Cube, CnfError> {
        let vars: Vec<u32> = vars.into_iter().collect();
        let values: Vec<bool> = values.into_iter().collect();
        if vars.len() != values.len() {
            return Err(CnfError::CubeLength { vars: vars.len(), values: values.len() });
        }
        let mut pairs: Vec<(u32, bool)> = vars.into_iter().zip(values).collect();
        pairs.sort_by_key(|&(v, _)| v);
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(CnfError::DuplicateCubeVar(w[0].0));
            }
        }
        if let Some(&(0, _)) = pairs.first() {
            return Err(CnfError::ZeroVariable);
        }
        let (vars, values) = pairs.into_iter().unzip();
        Ok(Cube { vars, values })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, bool)>) -> Result<Cube, CnfError> {
        let (vars, values): (Vec<u32>, Vec<bool>) = pairs.into_iter().unzip();
        Cube::new(vars, values)
    }

    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Result<Cube, CnfError> {
        Cube::from_pairs(lits.into_iter().map(|l| (l.var(), l.is_positive())))
    }

    pub fn empty() -> Cube {
        Cube { vars: Vec::new(), values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.vars.iter().copied().zip(self.values.iter().copied())
    }

    /// Looks up the cube's value for `var`, if assigned.
    pub fn value_of(&self, var: u32) -> Option<bool> {
        self.vars.binary_search(&var).ok().map(|i| self.values[i])
    }

    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        self.iter().map(|(v, b)| Lit::new(v, b))
    }

    pub fn max_var(&self) -> u32 {
        self.vars.last().copied().unwrap_or(0)
    }
}

/// A CNF formula. Immutable after construction by convention: the solver,
/// the partitioner and the grid all share `&Cnf` across threads.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Clause>,
    comments: Vec<String>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Cnf {
        Cnf { num_vars, clauses: Vec::new(), comments: Vec::new() }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn push_comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn add_clause(&mut self, clause: Clause) -> Result<(), CnfError> {
        let max = clause.max_var();
        if max > self.num_vars {
            return Err(CnfError::VarOutOfRange { var: max, num_vars: self.num_vars });
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Convenience: build a clause from DIMACS-form literals and add it.
    pub fn add_clause_dimacs(&mut self, lits: &[i32]) -> Result<(), CnfError> {
        let lits = lits
            .iter()
            .map(|&l| Lit::from_dimacs(l))
            .collect::<Result<Vec<_>, _>>()?;
        self.add_clause(Clause::new(lits)?)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// True iff every clause contains a literal satisfied by `assignment`.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        if assignment.len() != self.num_vars as usize {
            return Err(CnfError::AssignmentLength {
                got: assignment.len(),
                want: self.num_vars as usize,
            });
        }
        Ok(self
            .clauses
            .iter()
            .all(|c| c.iter().any(|&l| assignment.satisfies_lit(l))))
    }

    /// C[X̃/α]: clauses satisfied by the cube are removed; falsified
    /// literals are removed from the remaining clauses. Variable numbering
    /// is preserved; an empty clause may result (an immediate UNSAT
    /// witness).
    pub fn apply_cube(&self, cube: &Cube) -> Result<Cnf, CnfError> {
        if cube.max_var() > self.num_vars {
            return Err(CnfError::VarOutOfRange {
                var: cube.max_var(),
                num_vars: self.num_vars,
            });
        }
        let mut out = Cnf::new(self.num_vars);
        out.comments = self.comments.clone();
        'clauses: for clause in &self.clauses {
            let mut kept: Vec<Lit> = Vec::with_capacity(clause.len());
            for &lit in clause.iter() {
                match cube.value_of(lit.var()) {
                    Some(v) if lit.satisfied_by(v) => continue 'clauses,
                    Some(_) => {} // falsified: drop the literal
                    None => kept.push(lit),
                }
            }
            out.clauses.push(Clause { lits: kept });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(lits: &[i32]) -> Clause {
        Clause::new(lits.iter().map(|&l| Lit::from_dimacs(l).unwrap())).unwrap()
    }

    #[test]
    fn literal_roundtrip() {
        let l = Lit::new(5, false);
        assert_eq!(l.var(), 5);
        assert!(!l.is_positive());
        assert_eq!(l.to_dimacs(), -5);
        assert_eq!((!l).to_dimacs(), 5);
        assert!(Lit::from_dimacs(0).is_err());
    }

    #[test]
    fn tautology_rejected() {
        let err = Clause::new(vec![Lit::positive(3), Lit::negative(3)]).unwrap_err();
        assert_eq!(err, CnfError::Tautology(3));
    }

    #[test]
    fn duplicates_dropped() {
        let c = clause(&[1, -2, 1]);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn var_range_enforced() {
        let mut cnf = Cnf::new(2);
        assert!(cnf.add_clause_dimacs(&[1, -2]).is_ok());
        let err = cnf.add_clause_dimacs(&[3]).unwrap_err();
        assert_eq!(err, CnfError::VarOutOfRange { var: 3, num_vars: 2 });
    }

    #[test]
    fn evaluate_examples() {
        // (x1 ∨ ¬x2) under (1,1) → true
        let mut cnf = Cnf::new(2);
        cnf.add_clause_dimacs(&[1, -2]).unwrap();
        assert!(cnf.evaluate(&Assignment::new(vec![true, true])).unwrap());

        // (x1) ∧ (¬x1) is false under any assignment
        let mut contra = Cnf::new(1);
        contra.add_clause_dimacs(&[1]).unwrap();
        contra.add_clause_dimacs(&[-1]).unwrap();
        assert!(!contra.evaluate(&Assignment::new(vec![true])).unwrap());
        assert!(!contra.evaluate(&Assignment::new(vec![false])).unwrap());

        let err = cnf.evaluate(&Assignment::new(vec![true])).unwrap_err();
        assert_eq!(err, CnfError::AssignmentLength { got: 1, want: 2 });
    }

    #[test]
    fn apply_cube_simplifies() {
        // C = (x1∨x2) ∧ (¬x1∨x2), cube {x1=1} → (x2)
        let mut cnf = Cnf::new(2);
        cnf.add_clause_dimacs(&[1, 2]).unwrap();
        cnf.add_clause_dimacs(&[-1, 2]).unwrap();
        let cube = Cube::from_pairs([(1, true)]).unwrap();
        let reduced = cnf.apply_cube(&cube).unwrap();
        assert_eq!(reduced.num_clauses(), 1);
        assert_eq!(reduced.clauses()[0], clause(&[2]));
        assert_eq!(reduced.num_vars(), 2);
    }

    #[test]
    fn apply_cube_can_produce_empty_clause() {
        let mut cnf = Cnf::new(1);
        cnf.add_clause_dimacs(&[1]).unwrap();
        let cube = Cube::from_pairs([(1, false)]).unwrap();
        let reduced = cnf.apply_cube(&cube).unwrap();
        assert!(reduced.has_empty_clause());
    }

    #[test]
    fn cube_invariants() {
        let cube = Cube::from_pairs([(7, true), (2, false)]).unwrap();
        assert_eq!(cube.vars(), &[2, 7]);
        assert_eq!(cube.values(), &[false, true]);
        assert_eq!(cube.value_of(7), Some(true));
        assert_eq!(cube.value_of(3), None);

        let err = Cube::from_pairs([(2, true), (2, true)]).unwrap_err();
        assert_eq!(err, CnfError::DuplicateCubeVar(2));
        let err = Cube::new(vec![1, 2], vec![true]).unwrap_err();
        assert_eq!(err, CnfError::CubeLength { vars: 2, values: 1 });
    }
}
