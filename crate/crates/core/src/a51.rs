//! Majority-clocked three-register LFSR keystream generators: the full
//! A5/1 instance, small structurally identical presets for desk-scale
//! experiments, a fast bit-level simulator (the oracle the circuit and the
//! attacks are checked against), and the circuit builder producing the
//! inversion problem's gate graph.
//!
//! Conventions, pinned by the reference collision fixtures (see the tests):
//! cells are numbered 1..=len per register; the feedback bit enters cell 1
//! and cells shift toward higher numbers; a register shifts at step t iff
//! its clock bit agrees with the majority of the three clock bits; the
//! keystream bit of step t is sampled after the shift. Hex keys are read
//! most-significant-bit first into cells R1c1..R1c19, R2c1..R2c22,
//! R3c1..R3c23.

use thiserror::Error;

use crate::circuit::{Circuit, CircuitBuilder, Sig};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("register length must be at least 3, got {0}")]
    LengthTooSmall(u32),
    #[error("register length must be at most 64, got {0}")]
    LengthTooLarge(u32),
    #[error("tap position {tap} out of range 1..={len}")]
    TapOutOfRange { tap: u32, len: u32 },
    #[error("feedback taps must be nonempty and include the register length")]
    BadFeedback,
    #[error("keystream length must be at least 1")]
    EmptyKeystream,
    #[error("key has {got} bits but the generator needs {want}")]
    KeyLength { got: usize, want: usize },
    #[error("key hex string has {got} digits, expected {want}")]
    HexLength { got: usize, want: usize },
    #[error("invalid hex digit {0:?}")]
    BadHexDigit(char),
}

/// One linear feedback shift register. Tap positions are register-local,
/// 1-based cell numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrSpec {
    length: u32,
    feedback_taps: Vec<u32>,
    clock_tap: u32,
    output_tap: u32,
}

impl LfsrSpec {
    pub fn new(
        length: u32,
        feedback_taps: impl IntoIterator<Item = u32>,
        clock_tap: u32,
        output_tap: u32,
    ) -> Result<LfsrSpec, GeneratorError> {
        if length < 3 {
            return Err(GeneratorError::LengthTooSmall(length));
        }
        if length > 64 {
            return Err(GeneratorError::LengthTooLarge(length));
        }
        let mut feedback_taps: Vec<u32> = feedback_taps.into_iter().collect();
        feedback_taps.sort_unstable();
        feedback_taps.dedup();
        if feedback_taps.is_empty() || *feedback_taps.last().unwrap() != length {
            if let Some(&tap) = feedback_taps.iter().find(|&&t| t < 1 || t > length) {
                return Err(GeneratorError::TapOutOfRange { tap, len: length });
            }
            return Err(GeneratorError::BadFeedback);
        }
        for &tap in feedback_taps.iter().chain([&clock_tap, &output_tap]) {
            if tap < 1 || tap > length {
                return Err(GeneratorError::TapOutOfRange { tap, len: length });
            }
        }
        Ok(LfsrSpec { length, feedback_taps, clock_tap, output_tap })
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn feedback_taps(&self) -> &[u32] {
        &self.feedback_taps
    }

    pub fn clock_tap(&self) -> u32 {
        self.clock_tap
    }

    pub fn output_tap(&self) -> u32 {
        self.output_tap
    }

    fn feedback_mask(&self) -> u64 {
        self.feedback_taps.iter().fold(0u64, |m, &c| m | 1 << (c - 1))
    }

    fn cell_mask(&self) -> u64 {
        if self.length == 64 {
            !0
        } else {
            (1u64 << self.length) - 1
        }
    }
}

/// Three majority-clocked registers plus the keystream length to emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    registers: [LfsrSpec; 3],
    keystream_len: u32,
}

impl GeneratorSpec {
    pub fn new(registers: [LfsrSpec; 3], keystream_len: u32) -> Result<GeneratorSpec, GeneratorError> {
        if keystream_len == 0 {
            return Err(GeneratorError::EmptyKeystream);
        }
        Ok(GeneratorSpec { registers, keystream_len })
    }

    pub fn registers(&self) -> &[LfsrSpec; 3] {
        &self.registers
    }

    pub fn keystream_len(&self) -> u32 {
        self.keystream_len
    }

    pub fn with_keystream_len(&self, keystream_len: u32) -> Result<GeneratorSpec, GeneratorError> {
        GeneratorSpec::new(self.registers.clone(), keystream_len)
    }

    /// Key length n: the sum of the register lengths.
    pub fn key_len(&self) -> u32 {
        self.registers.iter().map(|r| r.length).sum()
    }

    pub fn load_key(&self, key: &[bool]) -> Result<GeneratorState, GeneratorError> {
        if key.len() != self.key_len() as usize {
            return Err(GeneratorError::KeyLength {
                got: key.len(),
                want: self.key_len() as usize,
            });
        }
        let mut cells = [0u64; 3];
        let mut idx = 0usize;
        for (r, reg) in self.registers.iter().enumerate() {
            for c in 0..reg.length {
                if key[idx] {
                    cells[r] |= 1 << c;
                }
                idx += 1;
            }
        }
        Ok(GeneratorState { cells, t: 0 })
    }

    /// Produces `keystream_len` bits from a key-loaded state.
    pub fn keystream(&self, key: &[bool]) -> Result<Vec<bool>, GeneratorError> {
        let mut state = self.load_key(key)?;
        Ok((0..self.keystream_len).map(|_| step(&mut state, self)).collect())
    }

    /// Parses a hex key: most significant bit of the hex word is cell 1 of
    /// register 1, registers concatenated in order.
    pub fn key_from_hex(&self, hex: &str) -> Result<Vec<bool>, GeneratorError> {
        let n = self.key_len() as usize;
        let digits = n.div_ceil(4);
        let chars: Vec<char> = hex.chars().collect();
        if chars.len() != digits {
            return Err(GeneratorError::HexLength { got: chars.len(), want: digits });
        }
        let mut bits = Vec::with_capacity(digits * 4);
        for ch in chars {
            let d = ch.to_digit(16).ok_or(GeneratorError::BadHexDigit(ch))? as u8;
            for k in (0..4).rev() {
                bits.push((d >> k) & 1 == 1);
            }
        }
        // when n is not a multiple of 4, the leading pad bits must be zero
        let pad = digits * 4 - n;
        if bits[..pad].iter().any(|&b| b) {
            return Err(GeneratorError::BadHexDigit('?'));
        }
        Ok(bits[pad..].to_vec())
    }

    pub fn key_to_hex(&self, key: &[bool]) -> Result<String, GeneratorError> {
        if key.len() != self.key_len() as usize {
            return Err(GeneratorError::KeyLength {
                got: key.len(),
                want: self.key_len() as usize,
            });
        }
        let digits = key.len().div_ceil(4);
        let pad = digits * 4 - key.len();
        let mut s = String::with_capacity(digits);
        let mut acc = 0u8;
        let mut nbits = 0u32;
        for i in 0..digits * 4 {
            let bit = if i < pad { false } else { key[i - pad] };
            acc = (acc << 1) | bit as u8;
            nbits += 1;
            if nbits == 4 {
                s.push(char::from_digit(acc as u32, 16).unwrap().to_ascii_uppercase());
                acc = 0;
                nbits = 0;
            }
        }
        Ok(s)
    }

    /// Unrolled gate graph computing the same function as `keystream`.
    /// Asynchronous clocking becomes a multiplexer per cell:
    /// new = τ ? shifted-in : old, with τ from the majority gate.
    pub fn build_circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        let mut cells: Vec<Vec<Sig>> = self
            .registers
            .iter()
            .map(|reg| (0..reg.length).map(|_| b.input()).collect())
            .collect();

        for _ in 0..self.keystream_len {
            let clock_bits: Vec<Sig> = self
                .registers
                .iter()
                .enumerate()
                .map(|(r, reg)| cells[r][(reg.clock_tap - 1) as usize])
                .collect();
            let maj = b.maj3(clock_bits[0], clock_bits[1], clock_bits[2]);

            for (r, reg) in self.registers.iter().enumerate() {
                // τ = (clock bit == majority)
                let diff = b.xor(clock_bits[r], maj);
                let tau = b.not(diff);
                let fb_taps: Vec<Sig> = reg
                    .feedback_taps
                    .iter()
                    .map(|&c| cells[r][(c - 1) as usize])
                    .collect();
                let fb = b.xor_many(&fb_taps);
                let old = cells[r].clone();
                for c in 0..reg.length as usize {
                    let shifted_in = if c == 0 { fb } else { old[c - 1] };
                    cells[r][c] = b.mux(tau, shifted_in, old[c]);
                }
            }

            let out_taps: Vec<Sig> = self
                .registers
                .iter()
                .enumerate()
                .map(|(r, reg)| cells[r][(reg.output_tap - 1) as usize])
                .collect();
            let out = b.xor_many(&out_taps);
            b.output(out);
        }
        b.finish().expect("generator circuits have inputs and outputs")
    }
}

/// Register contents at one time step. Cell c of register r is bit (c-1)
/// of `cells[r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorState {
    cells: [u64; 3],
    t: u64,
}

impl GeneratorState {
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn cell(&self, register: usize, cell: u32) -> bool {
        (self.cells[register] >> (cell - 1)) & 1 == 1
    }

    pub fn register_bits(&self, register: usize, len: u32) -> Vec<bool> {
        (1..=len).map(|c| self.cell(register, c)).collect()
    }
}

/// Advances the generator one step and returns the keystream bit: clock
/// bits are read, registers agreeing with their majority shift (the
/// feedback bit enters cell 1), and the output is the XOR of the output
/// taps of the new state.
pub fn step(state: &mut GeneratorState, spec: &GeneratorSpec) -> bool {
    let regs = spec.registers();
    let clock: Vec<bool> = (0..3).map(|r| state.cell(r, regs[r].clock_tap)).collect();
    let maj = (clock[0] & clock[1]) | (clock[0] & clock[2]) | (clock[1] & clock[2]);
    for r in 0..3 {
        if clock[r] == maj {
            let fb = (state.cells[r] & regs[r].feedback_mask()).count_ones() & 1;
            state.cells[r] = ((state.cells[r] << 1) | fb as u64) & regs[r].cell_mask();
        }
    }
    state.t += 1;
    (0..3).fold(false, |acc, r| acc ^ state.cell(r, regs[r].output_tap))
}

/// The full A5/1 generator: registers of lengths 19/22/23 with feedback
/// taps {19,18,17,14}, {22,21}, {23,22,21,8}, clock taps at cells 9/11/11,
/// output taps at the last cell of each register, 114 keystream bits.
pub fn a51_spec() -> GeneratorSpec {
    GeneratorSpec::new(
        [
            LfsrSpec::new(19, [19, 18, 17, 14], 9, 19).unwrap(),
            LfsrSpec::new(22, [22, 21], 11, 22).unwrap(),
            LfsrSpec::new(23, [23, 22, 21, 8], 11, 23).unwrap(),
        ],
        114,
    )
    .unwrap()
}

/// Desk-scale surrogate with the same structure: registers 5/6/7 (18-bit
/// key), feedback taps {5,3}, {6,5}, {7,6,5,2}, clock taps 3/3/4, output
/// taps at the last cells, keystream of twice the key length.
pub fn toy_spec() -> GeneratorSpec {
    toy_spec_custom(5, 6, 7, 36).unwrap()
}

/// Toy preset with custom lengths. Feedback taps follow the default
/// pattern {l, l-2} for short registers and {l, l-1, l-2, 2} for the
/// third; clock taps sit near the middle of each register.
pub fn toy_spec_custom(
    l1: u32,
    l2: u32,
    l3: u32,
    keystream_len: u32,
) -> Result<GeneratorSpec, GeneratorError> {
    let r1 = LfsrSpec::new(l1, [l1, l1 - 2], l1.div_ceil(2), l1)?;
    let r2 = LfsrSpec::new(l2, [l2, l2 - 1], l2 / 2, l2)?;
    let r3 = LfsrSpec::new(l3, [l3, l3 - 1, l3 - 2, 2], l3.div_ceil(2), l3)?;
    GeneratorSpec::new([r1, r2, r3], keystream_len)
}

pub fn bits_from_str(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

pub fn bits_to_str(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
