//! Tseitin transformation of a circuit into an equisatisfiable CNF, output
//! fixing, and input extraction from satisfying assignments.
//!
//! Variable numbering: inputs take variables 1..=n in input order, then
//! every non-input gate of the lowered circuit gets one auxiliary variable
//! in topological order. Decomposition sets over circuit inputs are
//! therefore always subsets of 1..=n.

use thiserror::Error;

use crate::circuit::{Circuit, Gate, Sig};
use crate::cnf::{Assignment, Clause, Cnf, Lit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("output vector has {got} bits but the circuit has {want} outputs")]
    OutputLength { got: usize, want: usize },
    #[error("model does not satisfy the encoded circuit")]
    ModelMismatch,
    #[error("model has {got} values but the encoding has {want} variables")]
    ModelLength { got: usize, want: usize },
}

/// A circuit encoded as CNF, with the variable maps needed to fix outputs
/// and read inputs back out of models.
#[derive(Debug, Clone)]
pub struct Encoding {
    cnf: Cnf,
    input_vars: Vec<u32>,
    output_vars: Vec<u32>,
    gate_var: Vec<u32>,
}

impl Encoding {
    pub fn cnf(&self) -> &Cnf {
        &self.cnf
    }

    pub fn num_inputs(&self) -> usize {
        self.input_vars.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.output_vars.len()
    }

    /// Variables carrying the circuit inputs (always 1..=n).
    pub fn input_vars(&self) -> &[u32] {
        &self.input_vars
    }

    /// Auxiliary variables carrying the circuit outputs.
    pub fn output_vars(&self) -> &[u32] {
        &self.output_vars
    }

    /// Variable assigned to a gate of the original (pre-lowering) circuit.
    pub fn var_of_gate(&self, gate: Sig) -> u32 {
        self.gate_var[gate.0 as usize]
    }

    /// C(f) ∧ y1^β1 ∧ … ∧ ym^βm: appends one unit clause per output bit,
    /// positive where the bit is 1.
    pub fn fix_outputs(&self, beta: &[bool]) -> Result<Cnf, EncodeError> {
        if beta.len() != self.output_vars.len() {
            return Err(EncodeError::OutputLength {
                got: beta.len(),
                want: self.output_vars.len(),
            });
        }
        let mut cnf = self.cnf.clone();
        for (&var, &bit) in self.output_vars.iter().zip(beta) {
            let unit = Clause::new([Lit::new(var, bit)]).unwrap();
            cnf.add_clause(unit).expect("output var in range");
        }
        Ok(cnf)
    }

    /// Reads the input bits off a satisfying assignment of the encoding.
    /// The model is re-checked against C(f) first.
    pub fn extract_input(&self, model: &Assignment) -> Result<Vec<bool>, EncodeError> {
        if model.len() != self.cnf.num_vars() as usize {
            return Err(EncodeError::ModelLength {
                got: model.len(),
                want: self.cnf.num_vars() as usize,
            });
        }
        if !self.cnf.evaluate(model).expect("length checked") {
            return Err(EncodeError::ModelMismatch);
        }
        Ok(self.input_vars.iter().map(|&v| model.value(v)).collect())
    }

    /// Reads the output bits off an assignment.
    pub fn extract_output(&self, model: &Assignment) -> Vec<bool> {
        self.output_vars.iter().map(|&v| model.value(v)).collect()
    }
}

/// Encodes a circuit: macro gates are lowered to AND/NOT first, then every
/// gate emits its clause template — 2 clauses for NOT, 3 for AND.
pub fn tseitin_encode(circuit: &Circuit) -> Encoding {
    let (lowered, gate_map) = circuit.lower();
    let n = lowered.num_inputs() as u32;

    // inputs get 1..=n, remaining gates follow in topological order
    let mut var_of = vec![0u32; lowered.gates().len()];
    let mut next_input = 1u32;
    let mut next_aux = n + 1;
    for (i, gate) in lowered.gates().iter().enumerate() {
        if matches!(gate, Gate::Input) {
            var_of[i] = next_input;
            next_input += 1;
        } else {
            var_of[i] = next_aux;
            next_aux += 1;
        }
    }

    let mut cnf = Cnf::new(next_aux - 1);
    for (i, gate) in lowered.gates().iter().enumerate() {
        let v = var_of[i];
        match *gate {
            Gate::Input => {}
            Gate::Not(a) => {
                let u = var_of[a.0 as usize];
                // v ≡ ¬u
                cnf.add_clause_dimacs(&[v as i32, u as i32]).unwrap();
                cnf.add_clause_dimacs(&[-(v as i32), -(u as i32)]).unwrap();
            }
            Gate::And(a, b) => {
                let u = var_of[a.0 as usize];
                let w = var_of[b.0 as usize];
                // v ≡ u ∧ w
                cnf.add_clause_dimacs(&[v as i32, -(u as i32), -(w as i32)]).unwrap();
                cnf.add_clause_dimacs(&[-(v as i32), u as i32]).unwrap();
                cnf.add_clause_dimacs(&[-(v as i32), w as i32]).unwrap();
            }
            _ => unreachable!("macro gates are lowered before encoding"),
        }
    }

    let input_vars: Vec<u32> = lowered.inputs().iter().map(|s| var_of[s.0 as usize]).collect();
    let output_vars: Vec<u32> = lowered.outputs().iter().map(|s| var_of[s.0 as usize]).collect();
    let gate_var: Vec<u32> = gate_map.iter().map(|s| var_of[s.0 as usize]).collect();

    Encoding { cnf, input_vars, output_vars, gate_var }
}
