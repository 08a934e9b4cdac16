//! Exhaustive truth-table oracle. Enumerates all 2^n assignments with
//! 64 assignments packed per machine word, so formulas up to ~26 variables
//! are checked in milliseconds. Deliberately shares no code with the
//! solver: this is the independent reference the solver is tested against.

use crate::cnf::{Assignment, Clause, Cnf, Lit};

/// Lane patterns for the six variables that vary inside one 64-lane block:
/// `LANE_PAT[k]` has bit i set iff bit k of lane index i is set.
const LANE_PAT: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Word of lanes where `lit` is true, for the block of assignments in
/// which variable v (1-based) takes bit (v-1) of `(block << 6) | lane`.
fn lit_lanes(lit: Lit, block: u64) -> u64 {
    let idx = lit.var() - 1;
    let pos = if idx < 6 {
        LANE_PAT[idx as usize]
    } else {
        // constant across the block: all ones iff the block bit is set
        0u64.wrapping_sub((block >> (idx - 6)) & 1)
    };
    if lit.is_positive() {
        pos
    } else {
        !pos
    }
}

fn sat_lanes(cnf: &Cnf, block: u64) -> u64 {
    let mut word = !0u64;
    for clause in cnf.clauses() {
        let mut cw = 0u64;
        for &lit in clause.iter() {
            cw |= lit_lanes(lit, block);
            if cw == !0 {
                break;
            }
        }
        word &= cw;
        if word == 0 {
            break;
        }
    }
    word
}

/// Mask of valid lanes when the formula has fewer than 6 variables.
fn valid_lanes(num_vars: u32) -> u64 {
    if num_vars >= 6 {
        !0u64
    } else {
        (1u64 << (1u64 << num_vars)) - 1
    }
}

fn blocks(num_vars: u32) -> u64 {
    1u64 << num_vars.saturating_sub(6)
}

fn assignment_from(num_vars: u32, block: u64, lane: u32) -> Assignment {
    let full = (block << 6) | lane as u64;
    Assignment::new((0..num_vars).map(|i| (full >> i) & 1 == 1).collect())
}

/// Finds some satisfying assignment by enumeration, or proves none exists.
pub fn find_model(cnf: &Cnf) -> Option<Assignment> {
    assert!(cnf.num_vars() <= 32, "oracle limited to 32 variables");
    let valid = valid_lanes(cnf.num_vars());
    for block in 0..blocks(cnf.num_vars()) {
        let word = sat_lanes(cnf, block) & valid;
        if word != 0 {
            return Some(assignment_from(cnf.num_vars(), block, word.trailing_zeros()));
        }
    }
    None
}

pub fn is_satisfiable(cnf: &Cnf) -> bool {
    find_model(cnf).is_some()
}

/// Number of satisfying assignments.
pub fn count_models(cnf: &Cnf) -> u64 {
    assert!(cnf.num_vars() <= 32, "oracle limited to 32 variables");
    let valid = valid_lanes(cnf.num_vars());
    (0..blocks(cnf.num_vars()))
        .map(|b| (sat_lanes(cnf, b) & valid).count_ones() as u64)
        .sum()
}

/// Calls `f` with every satisfying assignment, in lane order.
pub fn for_each_model(cnf: &Cnf, mut f: impl FnMut(&Assignment)) {
    assert!(cnf.num_vars() <= 32, "oracle limited to 32 variables");
    let valid = valid_lanes(cnf.num_vars());
    for block in 0..blocks(cnf.num_vars()) {
        let mut word = sat_lanes(cnf, block) & valid;
        while word != 0 {
            let lane = word.trailing_zeros();
            f(&assignment_from(cnf.num_vars(), block, lane));
            word &= word - 1;
        }
    }
}

/// True iff `clause` is a logical consequence of `cnf`: no model of `cnf`
/// falsifies it.
pub fn entails(cnf: &Cnf, clause: &Clause) -> bool {
    let mut negated = cnf.clone();
    for &lit in clause.iter() {
        let unit = Clause::new([!lit]).unwrap();
        if negated.add_clause(unit).is_err() {
            // literal over a variable the formula does not have: the clause
            // cannot be entailed unless cnf is unsat
            return !is_satisfiable(cnf);
        }
    }
    !is_satisfiable(&negated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Cube;

    fn cnf(num_vars: u32, clauses: &[&[i32]]) -> Cnf {
        let mut c = Cnf::new(num_vars);
        for cl in clauses {
            c.add_clause_dimacs(cl).unwrap();
        }
        c
    }

    #[test]
    fn tiny_cases() {
        assert!(is_satisfiable(&cnf(1, &[])));
        assert!(!is_satisfiable(&cnf(1, &[&[1], &[-1]])));
        assert_eq!(count_models(&cnf(2, &[&[1, 2]])), 3);
        assert_eq!(count_models(&cnf(3, &[])), 8);
    }

    #[test]
    fn matches_direct_evaluation() {
        // cross-check the lane trickery against Cnf::evaluate by counting
        // models both ways on assorted formulas crossing the 6-var boundary
        let mut seed = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for n in 1..=9u32 {
            for _ in 0..30 {
                let mut c = Cnf::new(n);
                let clauses = (next() % 12 + 1) as usize;
                for _ in 0..clauses {
                    let width = (next() % 3 + 1) as usize;
                    let mut lits = Vec::new();
                    for _ in 0..width {
                        let var = (next() % n as u64 + 1) as u32;
                        let pos = next() & 1 == 0;
                        lits.push(Lit::new(var, pos));
                    }
                    if let Ok(cl) = Clause::new(lits) {
                        c.add_clause(cl).unwrap();
                    }
                }
                let direct = (0..(1u64 << n))
                    .filter(|&v| {
                        let a = Assignment::new((0..n).map(|i| (v >> i) & 1 == 1).collect());
                        c.evaluate(&a).unwrap()
                    })
                    .count() as u64;
                assert_eq!(count_models(&c), direct);
            }
        }
    }

    #[test]
    fn found_models_satisfy() {
        let c = cnf(8, &[&[1, -3], &[2, 4, -5], &[-1, 6], &[7, 8], &[-7, -8]]);
        let m = find_model(&c).unwrap();
        assert!(c.evaluate(&m).unwrap());
        let mut count = 0;
        for_each_model(&c, |a| {
            assert!(c.evaluate(a).unwrap());
            count += 1;
        });
        assert_eq!(count, count_models(&c));
    }

    #[test]
    fn entailment() {
        let c = cnf(3, &[&[1], &[-1, 2]]);
        assert!(entails(&c, &Clause::new([Lit::positive(2)]).unwrap()));
        assert!(!entails(&c, &Clause::new([Lit::positive(3)]).unwrap()));
    }

    #[test]
    fn full_cube_emptiness_matches_evaluate() {
        // apply_cube(C, α) with a full assignment leaves zero clauses iff α
        // satisfies C
        let c = cnf(5, &[&[1, 2, -3], &[-2, 4], &[3, -5], &[-1, -4, 5]]);
        for v in 0u64..32 {
            let bits: Vec<bool> = (0..5).map(|i| (v >> i) & 1 == 1).collect();
            let cube = Cube::new(1..=5, bits.iter().copied()).unwrap();
            let reduced = c.apply_cube(&cube).unwrap();
            let sat = c.evaluate(&Assignment::new(bits)).unwrap();
            assert_eq!(reduced.num_clauses() == 0, sat);
        }
    }
}
