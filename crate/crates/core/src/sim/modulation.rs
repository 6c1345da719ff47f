use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A complex baseband symbol.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Symbol {
    pub re: f64,
    pub im: f64,
}

impl Symbol {
    pub fn new(re: f64, im: f64) -> Symbol {
        Symbol { re, im }
    }

    pub fn energy(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

/// Gray-mapped constellations with unit average energy.
///
/// Bit `b` of a symbol maps to the real axis when its index within the
/// symbol is even and to the imaginary axis when it is odd; along each axis
/// the first bit selects the sign and the following bits the amplitude
/// ring, as in the NR mapping tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modulation {
    Bpsk,
    Qpsk,
    Qam16,
    Qam64,
}

impl Modulation {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            Modulation::Qpsk => 2,
            Modulation::Qam16 => 4,
            Modulation::Qam64 => 6,
        }
    }

    /// Whether the constellation is symmetric enough that the all-zero
    /// codeword represents every codeword.
    pub fn is_symmetric(self) -> bool {
        matches!(self, Modulation::Bpsk | Modulation::Qpsk)
    }

    fn scale(self) -> f64 {
        match self {
            Modulation::Bpsk => 1.0,
            Modulation::Qpsk => std::f64::consts::FRAC_1_SQRT_2,
            Modulation::Qam16 => 1.0 / 10f64.sqrt(),
            Modulation::Qam64 => 1.0 / 42f64.sqrt(),
        }
    }

    /// Bits carried by one axis.
    fn axis_bits(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            m => m.bits_per_symbol() / 2,
        }
    }

    /// Amplitude of one axis from its bits (sign bit first).
    fn axis_level(self, bits: &[u8]) -> f64 {
        let sign = |b: u8| 1.0 - 2.0 * b as f64;
        let amplitude = match bits.len() {
            1 => 1.0,
            2 => 2.0 - sign(bits[1]),
            3 => 4.0 - sign(bits[1]) * (2.0 - sign(bits[2])),
            _ => unreachable!(),
        };
        sign(bits[0]) * amplitude * self.scale()
    }

    /// Symbol for `bits_per_symbol()` bits.
    pub fn map(self, bits: &[u8]) -> Symbol {
        debug_assert_eq!(bits.len(), self.bits_per_symbol());
        match self {
            Modulation::Bpsk => Symbol::new(self.axis_level(bits), 0.0),
            _ => {
                let re: Vec<u8> = bits.iter().step_by(2).copied().collect();
                let im: Vec<u8> = bits.iter().skip(1).step_by(2).copied().collect();
                Symbol::new(self.axis_level(&re), self.axis_level(&im))
            }
        }
    }

    /// Every constellation point indexed by its bit label (first bit is the
    /// most significant).
    pub fn constellation(self) -> Vec<Symbol> {
        let q = self.bits_per_symbol();
        (0..1usize << q)
            .map(|label| {
                let bits: Vec<u8> = (0..q).map(|i| (label >> (q - 1 - i) & 1) as u8).collect();
                self.map(&bits)
            })
            .collect()
    }

    /// Per-axis levels with their bit labels.
    fn axis_table(self) -> Vec<(f64, Vec<u8>)> {
        let a = self.axis_bits();
        (0..1usize << a)
            .map(|label| {
                let bits: Vec<u8> = (0..a).map(|i| (label >> (a - 1 - i) & 1) as u8).collect();
                (self.axis_level(&bits), bits)
            })
            .collect()
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modulation::Bpsk => "bpsk",
            Modulation::Qpsk => "qpsk",
            Modulation::Qam16 => "qam16",
            Modulation::Qam64 => "qam64",
        })
    }
}

impl FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Modulation> {
        match s.to_ascii_lowercase().as_str() {
            "bpsk" => Ok(Modulation::Bpsk),
            "qpsk" => Ok(Modulation::Qpsk),
            "qam16" | "16qam" => Ok(Modulation::Qam16),
            "qam64" | "64qam" => Ok(Modulation::Qam64),
            _ => Err(Error::InvalidParameter(format!(
                "unknown modulation '{s}' (expected bpsk, qpsk, qam16 or qam64)"
            ))),
        }
    }
}

/// Maps `bits` to symbols; the length must be a multiple of the bits per
/// symbol.
pub fn modulate(bits: &[u8], modulation: Modulation) -> Result<Vec<Symbol>> {
    let q = modulation.bits_per_symbol();
    if bits.len() % q != 0 {
        return Err(Error::SymbolLength {
            len: bits.len(),
            bits_per_symbol: q,
        });
    }
    Ok(bits.chunks(q).map(|c| modulation.map(c)).collect())
}

/// Max-log-MAP bit LLRs for received symbols with noise variance `sigma2`
/// per real dimension. Positive values favour bit 0.
pub fn demap_maxlogmap(received: &[Symbol], modulation: Modulation, sigma2: f64) -> Vec<f64> {
    assert!(sigma2 > 0.0, "noise variance must be positive");
    let table = modulation.axis_table();
    let a = modulation.axis_bits();
    let scale = 1.0 / (2.0 * sigma2);
    let mut out = Vec::with_capacity(received.len() * modulation.bits_per_symbol());
    let axis_llrs = |y: f64, out: &mut Vec<f64>| {
        let mut best = [[f64::INFINITY; 2]; 3];
        for (level, bits) in &table {
            let d = (y - level) * (y - level);
            for (i, &b) in bits.iter().enumerate() {
                let slot = &mut best[i][b as usize];
                *slot = slot.min(d);
            }
        }
        for pair in &best[..a] {
            out.push((pair[1] - pair[0]) * scale);
        }
    };
    for s in received {
        match modulation {
            Modulation::Bpsk => axis_llrs(s.re, &mut out),
            _ => {
                let start = out.len();
                let mut re = Vec::with_capacity(a);
                let mut im = Vec::with_capacity(a);
                axis_llrs(s.re, &mut re);
                axis_llrs(s.im, &mut im);
                for i in 0..a {
                    out.push(re[i]);
                    out.push(im[i]);
                }
                debug_assert_eq!(out.len() - start, 2 * a);
            }
        }
    }
    out
}
