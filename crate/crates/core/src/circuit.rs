//! Boolean circuits over the {AND, NOT} basis with macro gates
//! (XOR, OR, MAJ3) that lower to that basis before encoding.
//!
//! Gates are stored in topological order: every operand index precedes the
//! gate that uses it. `CircuitBuilder` guarantees this by construction.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("circuit must have at least one input")]
    NoInputs,
    #[error("circuit must have at least one output")]
    NoOutputs,
    #[error("signal {0} does not exist")]
    UnknownSignal(u32),
}

/// Reference to a gate's output signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sig(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Input,
    Not(Sig),
    And(Sig, Sig),
    Xor(Sig, Sig),
    Or(Sig, Sig),
    Maj3(Sig, Sig, Sig),
}

impl Gate {
    pub fn operands(&self) -> Vec<Sig> {
        match *self {
            Gate::Input => vec![],
            Gate::Not(a) => vec![a],
            Gate::And(a, b) | Gate::Xor(a, b) | Gate::Or(a, b) => vec![a, b],
            Gate::Maj3(a, b, c) => vec![a, b, c],
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Gate::Input => "input",
            Gate::Not(_) => "not",
            Gate::And(..) => "and",
            Gate::Xor(..) => "xor",
            Gate::Or(..) => "or",
            Gate::Maj3(..) => "maj3",
        }
    }
}

/// An acyclic gate graph with designated inputs and outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    inputs: Vec<Sig>,
    outputs: Vec<Sig>,
}

impl Circuit {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn inputs(&self) -> &[Sig] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Sig] {
        &self.outputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Evaluates the circuit on one input vector.
    pub fn simulate(&self, inputs: &[bool]) -> Vec<bool> {
        assert_eq!(inputs.len(), self.inputs.len(), "input length mismatch");
        let lanes: Vec<u64> = inputs.iter().map(|&b| if b { !0 } else { 0 }).collect();
        self.simulate_lanes(&lanes)
            .into_iter()
            .map(|w| w & 1 == 1)
            .collect()
    }

    /// Evaluates 64 input vectors at once: bit k of `inputs[i]` is input i
    /// of vector k, and bit k of output word j is output j of vector k.
    pub fn simulate_lanes(&self, inputs: &[u64]) -> Vec<u64> {
        assert_eq!(inputs.len(), self.inputs.len(), "input length mismatch");
        let mut values = vec![0u64; self.gates.len()];
        let mut next_input = 0usize;
        for (i, gate) in self.gates.iter().enumerate() {
            values[i] = match *gate {
                Gate::Input => {
                    let v = inputs[next_input];
                    next_input += 1;
                    v
                }
                Gate::Not(a) => !values[a.0 as usize],
                Gate::And(a, b) => values[a.0 as usize] & values[b.0 as usize],
                Gate::Xor(a, b) => values[a.0 as usize] ^ values[b.0 as usize],
                Gate::Or(a, b) => values[a.0 as usize] | values[b.0 as usize],
                Gate::Maj3(a, b, c) => {
                    let (x, y, z) =
                        (values[a.0 as usize], values[b.0 as usize], values[c.0 as usize]);
                    (x & y) | (x & z) | (y & z)
                }
            };
        }
        self.outputs.iter().map(|s| values[s.0 as usize]).collect()
    }

    /// Rewrites macro gates (XOR, OR, MAJ3) into AND/NOT subgraphs.
    /// Returns the lowered circuit and, for each original gate, the signal
    /// carrying its value in the lowered circuit. Outputs that are input
    /// gates get a double-NOT buffer so that every output is a gate signal.
    pub fn lower(&self) -> (Circuit, Vec<Sig>) {
        let mut b = CircuitBuilder::new();
        let mut map: Vec<Sig> = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let sig = match *gate {
                Gate::Input => b.input(),
                Gate::Not(a) => b.not(map[a.0 as usize]),
                Gate::And(x, y) => b.and(map[x.0 as usize], map[y.0 as usize]),
                Gate::Or(x, y) => lower_or(&mut b, map[x.0 as usize], map[y.0 as usize]),
                Gate::Xor(x, y) => {
                    let (x, y) = (map[x.0 as usize], map[y.0 as usize]);
                    // x ^ y = (x ∧ ¬y) ∨ (¬x ∧ y)
                    let nx = b.not(x);
                    let ny = b.not(y);
                    let t1 = b.and(x, ny);
                    let t2 = b.and(nx, y);
                    lower_or(&mut b, t1, t2)
                }
                Gate::Maj3(x, y, z) => {
                    let (x, y, z) = (map[x.0 as usize], map[y.0 as usize], map[z.0 as usize]);
                    // (x ∧ y) ∨ (x ∧ z) ∨ (y ∧ z)
                    let xy = b.and(x, y);
                    let xz = b.and(x, z);
                    let yz = b.and(y, z);
                    let o = lower_or(&mut b, xy, xz);
                    lower_or(&mut b, o, yz)
                }
            };
            map.push(sig);
        }
        for &out in &self.outputs {
            let mut sig = map[out.0 as usize];
            if matches!(b.gates[sig.0 as usize], Gate::Input) {
                let n = b.not(sig);
                sig = b.not(n);
            }
            b.output(sig);
        }
        let lowered = b.finish().expect("lowering preserves validity");
        let out_map = self
            .gates
            .iter()
            .enumerate()
            .map(|(i, _)| map[i])
            .collect();
        (lowered, out_map)
    }

    /// One gate per line: index, kind, operand indices. Debug aid, not an
    /// interchange format.
    pub fn netlist(&self) -> String {
        let mut s = String::new();
        for (i, gate) in self.gates.iter().enumerate() {
            write!(s, "{} {}", i, gate.kind_name()).unwrap();
            for op in gate.operands() {
                write!(s, " {}", op.0).unwrap();
            }
            s.push('\n');
        }
        writeln!(
            s,
            "inputs {}",
            self.inputs.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        writeln!(
            s,
            "outputs {}",
            self.outputs.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        s
    }
}

// a ∨ b = ¬(¬a ∧ ¬b)
fn lower_or(b: &mut CircuitBuilder, x: Sig, y: Sig) -> Sig {
    let nx = b.not(x);
    let ny = b.not(y);
    let a = b.and(nx, ny);
    b.not(a)
}

#[derive(Debug, Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    inputs: Vec<Sig>,
    outputs: Vec<Sig>,
}

impl CircuitBuilder {
    pub fn new() -> CircuitBuilder {
        CircuitBuilder::default()
    }

    fn push(&mut self, gate: Gate) -> Sig {
        let sig = Sig(self.gates.len() as u32);
        self.gates.push(gate);
        sig
    }

    pub fn input(&mut self) -> Sig {
        let sig = self.push(Gate::Input);
        self.inputs.push(sig);
        sig
    }

    pub fn not(&mut self, a: Sig) -> Sig {
        self.push(Gate::Not(a))
    }

    pub fn and(&mut self, a: Sig, b: Sig) -> Sig {
        self.push(Gate::And(a, b))
    }

    pub fn or(&mut self, a: Sig, b: Sig) -> Sig {
        self.push(Gate::Or(a, b))
    }

    pub fn xor(&mut self, a: Sig, b: Sig) -> Sig {
        self.push(Gate::Xor(a, b))
    }

    pub fn maj3(&mut self, a: Sig, b: Sig, c: Sig) -> Sig {
        self.push(Gate::Maj3(a, b, c))
    }

    /// XOR of an arbitrary nonempty list.
    pub fn xor_many(&mut self, sigs: &[Sig]) -> Sig {
        assert!(!sigs.is_empty(), "xor_many needs at least one signal");
        let mut acc = sigs[0];
        for &s in &sigs[1..] {
            acc = self.xor(acc, s);
        }
        acc
    }

    /// if sel then a else b
    pub fn mux(&mut self, sel: Sig, a: Sig, b: Sig) -> Sig {
        let nsel = self.not(sel);
        let ta = self.and(sel, a);
        let tb = self.and(nsel, b);
        self.or(ta, tb)
    }

    pub fn output(&mut self, sig: Sig) {
        self.outputs.push(sig);
    }

    pub fn finish(self) -> Result<Circuit, CircuitError> {
        if self.inputs.is_empty() {
            return Err(CircuitError::NoInputs);
        }
        if self.outputs.is_empty() {
            return Err(CircuitError::NoOutputs);
        }
        for &out in &self.outputs {
            if out.0 as usize >= self.gates.len() {
                return Err(CircuitError::UnknownSignal(out.0));
            }
        }
        Ok(Circuit { gates: self.gates, inputs: self.inputs, outputs: self.outputs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_and_simulate() {
        let mut b = CircuitBuilder::new();
        let x = b.input();
        let y = b.input();
        let g = b.xor(x, y);
        b.output(g);
        let c = b.finish().unwrap();
        assert_eq!(c.simulate(&[false, false]), vec![false]);
        assert_eq!(c.simulate(&[true, false]), vec![true]);
        assert_eq!(c.simulate(&[true, true]), vec![false]);
    }

    #[test]
    fn lowering_preserves_function() {
        // one circuit using every macro kind, checked exhaustively
        let mut b = CircuitBuilder::new();
        let ins: Vec<Sig> = (0..4).map(|_| b.input()).collect();
        let x = b.xor(ins[0], ins[1]);
        let o = b.or(x, ins[2]);
        let m = b.maj3(o, ins[2], ins[3]);
        let n = b.not(m);
        b.output(m);
        b.output(n);
        let c = b.finish().unwrap();
        let (lowered, _) = c.lower();
        assert!(lowered
            .gates()
            .iter()
            .all(|g| matches!(g, Gate::Input | Gate::Not(_) | Gate::And(..))));
        for v in 0u32..16 {
            let bits: Vec<bool> = (0..4).map(|i| (v >> i) & 1 == 1).collect();
            assert_eq!(c.simulate(&bits), lowered.simulate(&bits), "input {v:04b}");
        }
    }

    #[test]
    fn lowering_buffers_input_outputs() {
        let mut b = CircuitBuilder::new();
        let x = b.input();
        b.output(x);
        let c = b.finish().unwrap();
        let (lowered, _) = c.lower();
        // the output is no longer an input gate
        let out = lowered.outputs()[0];
        assert!(!matches!(lowered.gates()[out.0 as usize], Gate::Input));
        assert_eq!(lowered.simulate(&[true]), vec![true]);
        assert_eq!(lowered.simulate(&[false]), vec![false]);
    }

    #[test]
    fn lanes_agree_with_single() {
        let mut b = CircuitBuilder::new();
        let ins: Vec<Sig> = (0..3).map(|_| b.input()).collect();
        let m = b.maj3(ins[0], ins[1], ins[2]);
        b.output(m);
        let c = b.finish().unwrap();
        // pack all 8 assignments into one lane call
        let lane_inputs: Vec<u64> = (0..3)
            .map(|i| {
                let mut w = 0u64;
                for v in 0u64..8 {
                    w |= ((v >> i) & 1) << v;
                }
                w
            })
            .collect();
        let out = c.simulate_lanes(&lane_inputs)[0];
        for v in 0u64..8 {
            let bits: Vec<bool> = (0..3).map(|i| (v >> i) & 1 == 1).collect();
            assert_eq!(c.simulate(&bits)[0], (out >> v) & 1 == 1);
        }
    }

    #[test]
    fn empty_circuits_rejected() {
        assert_eq!(CircuitBuilder::new().finish().unwrap_err(), CircuitError::NoInputs);
        let mut b = CircuitBuilder::new();
        b.input();
        assert_eq!(b.finish().unwrap_err(), CircuitError::NoOutputs);
    }
}
