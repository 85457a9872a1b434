//! GF(4) symbols and words in bit-plane form.
//!
//! A symbol is stored as a pair of bits `(x, z)`:
//!
//! | symbol | bits   | Pauli |
//! |--------|--------|-------|
//! | 0      | (0, 0) | I     |
//! | 1      | (1, 0) | X     |
//! | ω      | (0, 1) | Z     |
//! | ω²     | (1, 1) | Y     |
//!
//! Addition in GF(4) is XOR on both planes, so a word of length `n` is two
//! `n`-bit planes and the additive group of GF(4)^n is the XOR group on
//! them. The trace inner product becomes the binary symplectic form
//! `Σ_i (u.x_i v.z_i + u.z_i v.x_i) mod 2`.

use std::fmt;
use std::ops::{Add, BitXor, BitXorAssign, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of GF(4) = {0, 1, ω, ω²} with ω² = ω + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gf4 {
    Zero,
    One,
    Omega,
    OmegaSq,
}

impl Gf4 {
    pub const ALL: [Gf4; 4] = [Gf4::Zero, Gf4::One, Gf4::Omega, Gf4::OmegaSq];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Gf4::Zero,
            (true, false) => Gf4::One,
            (false, true) => Gf4::Omega,
            (true, true) => Gf4::OmegaSq,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Gf4::Zero => (false, false),
            Gf4::One => (true, false),
            Gf4::Omega => (false, true),
            Gf4::OmegaSq => (true, true),
        }
    }

    /// Discrete log base ω, `None` for zero.
    fn log(self) -> Option<u8> {
        match self {
            Gf4::Zero => None,
            Gf4::One => Some(0),
            Gf4::Omega => Some(1),
            Gf4::OmegaSq => Some(2),
        }
    }

    fn exp(e: u8) -> Self {
        match e % 3 {
            0 => Gf4::One,
            1 => Gf4::Omega,
            _ => Gf4::OmegaSq,
        }
    }

    /// Galois conjugate `a ↦ a²`; swaps ω and ω².
    pub fn conj(self) -> Self {
        self * self
    }

    /// Absolute trace `a + a²` to GF(2).
    pub fn trace(self) -> bool {
        (self + self.conj()) != Gf4::Zero
    }

    pub fn pauli(self) -> char {
        match self {
            Gf4::Zero => 'I',
            Gf4::One => 'X',
            Gf4::Omega => 'Z',
            Gf4::OmegaSq => 'Y',
        }
    }

    pub fn from_pauli(c: char) -> Option<Self> {
        match c {
            'I' => Some(Gf4::Zero),
            'X' => Some(Gf4::One),
            'Z' => Some(Gf4::Omega),
            'Y' => Some(Gf4::OmegaSq),
            _ => None,
        }
    }

    /// Field alphabet: `0`, `1`, `w` (ω), `W` (ω²).
    pub fn from_field_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Gf4::Zero),
            '1' => Some(Gf4::One),
            'w' => Some(Gf4::Omega),
            'W' => Some(Gf4::OmegaSq),
            _ => None,
        }
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    fn add(self, rhs: Gf4) -> Gf4 {
        let (ax, az) = self.bits();
        let (bx, bz) = rhs.bits();
        Gf4::from_bits(ax ^ bx, az ^ bz)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        match (self.log(), rhs.log()) {
            (Some(a), Some(b)) => Gf4::exp(a + b),
            _ => Gf4::Zero,
        }
    }
}

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A word of GF(4)^n stored as x- and z-bit planes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf4Vector {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl Gf4Vector {
    pub fn zeros(n: usize) -> Self {
        Gf4Vector {
            n,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
        }
    }

    pub fn from_symbols(symbols: &[Gf4]) -> Self {
        let mut v = Gf4Vector::zeros(symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            v.set(i, s);
        }
        v
    }

    /// Builds a word from the low `n` bits of two plane masks; position `i`
    /// is bit `i`.
    pub fn from_planes(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= WORD, "from_planes handles at most 64 positions");
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let mut v = Gf4Vector::zeros(n);
        if n > 0 {
            v.x[0] = x & mask;
            v.z[0] = z & mask;
        }
        v
    }

    /// Index `i` in `0..4^n` decoded as base-4 digits, position 0 least
    /// significant, digit value = `x + 2z`.
    pub fn from_index(n: usize, index: u64) -> Self {
        let mut v = Gf4Vector::zeros(n);
        for i in 0..n {
            let digit = (index >> (2 * i)) & 3;
            v.set(i, Gf4::from_bits(digit & 1 == 1, digit & 2 == 2));
        }
        v
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> Gf4 {
        assert!(i < self.n);
        let (w, b) = (i / WORD, i % WORD);
        Gf4::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, i: usize, s: Gf4) {
        assert!(i < self.n);
        let (w, b) = (i / WORD, i % WORD);
        let (sx, sz) = s.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((sx as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((sz as u64) << b);
    }

    pub fn symbols(&self) -> impl Iterator<Item = Gf4> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    pub fn x_bit(&self, i: usize) -> bool {
        (self.x[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn z_bit(&self, i: usize) -> bool {
        (self.z[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Number of positions with a nonzero symbol.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Column `c` of the `2n`-column binary form: x-bits first, then z-bits.
    pub(crate) fn column(&self, c: usize) -> bool {
        if c < self.n {
            self.x_bit(c)
        } else {
            self.z_bit(c - self.n)
        }
    }

    pub(crate) fn flip_column(&mut self, c: usize) {
        let (plane, i) = if c < self.n {
            (&mut self.x, c)
        } else {
            (&mut self.z, c - self.n)
        };
        plane[i / WORD] ^= 1 << (i % WORD);
    }

    pub(crate) fn first_column(&self) -> Option<usize> {
        (0..2 * self.n).find(|&c| self.column(c))
    }

    /// Exchanges the planes; `swap(u) · v` in the plain dot product equals
    /// the trace inner product `u * v`.
    pub(crate) fn swapped(&self) -> Self {
        Gf4Vector {
            n: self.n,
            x: self.z.clone(),
            z: self.x.clone(),
        }
    }

    /// Pauli label under 0→I, 1→X, ω→Z, ω²→Y.
    pub fn pauli_label(&self) -> String {
        self.symbols().map(Gf4::pauli).collect()
    }

    pub fn from_pauli_label(label: &str) -> Result<Self> {
        let symbols = label
            .chars()
            .map(|c| Gf4::from_pauli(c).ok_or(Error::UnknownSymbol { line: 0, symbol: c }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Gf4Vector::from_symbols(&symbols))
    }
}

/// Trace inner product `u * v = Σ tr(v_i ū_i)`; `false` iff the
/// corresponding Pauli operators commute.
pub fn trace_inner(u: &Gf4Vector, v: &Gf4Vector) -> Result<bool> {
    if u.n != v.n {
        return Err(Error::LengthMismatch {
            left: u.n,
            right: v.n,
        });
    }
    let ones: u32 = u
        .x
        .iter()
        .zip(&u.z)
        .zip(v.x.iter().zip(&v.z))
        .map(|((ux, uz), (vx, vz))| ((ux & vz) ^ (uz & vx)).count_ones())
        .sum();
    Ok(ones % 2 == 1)
}

impl BitXorAssign<&Gf4Vector> for Gf4Vector {
    fn bitxor_assign(&mut self, rhs: &Gf4Vector) {
        assert_eq!(self.n, rhs.n, "length mismatch");
        for (a, b) in self.x.iter_mut().zip(&rhs.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&rhs.z) {
            *a ^= b;
        }
    }
}

impl BitXor<&Gf4Vector> for &Gf4Vector {
    type Output = Gf4Vector;
    fn bitxor(self, rhs: &Gf4Vector) -> Gf4Vector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl Add<&Gf4Vector> for &Gf4Vector {
    type Output = Gf4Vector;
    fn add(self, rhs: &Gf4Vector) -> Gf4Vector {
        self ^ rhs
    }
}

impl fmt::Display for Gf4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pauli_label())
    }
}

impl fmt::Debug for Gf4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf4Vector({})", self.pauli_label())
    }
}

impl FromStr for Gf4Vector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Gf4Vector::from_pauli_label(s)
    }
}
