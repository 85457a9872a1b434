//! Additive GF(4) codes: rank reduction, trace duals, enumeration, and the
//! stabilizer correspondence.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf4::{trace_inner, Gf4Vector};

/// Largest `log2 |C|` that [`AdditiveCode::codewords`] will enumerate.
pub const ENUMERATION_CAP_LOG2: usize = 22;

/// Row-echelon basis over GF(2) on the `2n` binary columns; each row has a
/// distinct pivot that is clear in every row inserted after it.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: Vec<(usize, Gf4Vector)>,
}

impl Echelon {
    fn reduce(&self, v: &Gf4Vector) -> Gf4Vector {
        let mut r = v.clone();
        for (pivot, row) in &self.rows {
            if r.column(*pivot) {
                r ^= row;
            }
        }
        r
    }

    /// Inserts `v` if it is independent; returns whether it was.
    fn insert(&mut self, v: &Gf4Vector) -> bool {
        let r = self.reduce(v);
        match r.first_column() {
            Some(pivot) => {
                self.rows.push((pivot, r));
                true
            }
            None => false,
        }
    }
}

/// An additive subgroup of GF(4)^n given by GF(2)-independent generators.
#[derive(Clone, Debug)]
pub struct AdditiveCode {
    n: usize,
    generators: Vec<Gf4Vector>,
    echelon: Echelon,
    self_orthogonal: bool,
}

impl AdditiveCode {
    /// Builds the code spanned by `rows`. Dependent rows are dropped; the
    /// surviving generators keep their original form and order.
    pub fn from_generators(n: usize, rows: impl IntoIterator<Item = Gf4Vector>) -> Result<Self> {
        let mut echelon = Echelon::default();
        let mut generators = Vec::new();
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            if echelon.insert(&row) {
                generators.push(row);
            }
        }
        let self_orthogonal = generators.iter().enumerate().all(|(i, g)| {
            generators[i + 1..]
                .iter()
                .all(|h| !trace_inner(g, h).expect("equal lengths"))
        });
        Ok(AdditiveCode {
            n,
            generators,
            echelon,
            self_orthogonal,
        })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(n: usize) -> Self {
        AdditiveCode::from_generators(n, std::iter::empty()).expect("no rows")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Gf4Vector] {
        &self.generators
    }

    /// GF(2)-rank `r`; the code has `2^r` words.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(1u8) << self.rank()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.self_orthogonal
    }

    /// `k = n - r` when the code can be a stabilizer group.
    pub fn k(&self) -> Option<usize> {
        self.n.checked_sub(self.rank())
    }

    /// `K = 2^(n-r)`, the code-space dimension of the stabilizer code.
    pub fn code_dimension(&self) -> Option<BigUint> {
        self.k().map(|k| BigUint::from(1u8) << k)
    }

    pub fn contains(&self, v: &Gf4Vector) -> bool {
        v.len() == self.n && self.echelon.reduce(v).is_zero()
    }

    /// Whether `v` is trace-orthogonal to every generator.
    pub fn is_orthogonal_to(&self, v: &Gf4Vector) -> Result<bool> {
        for g in &self.generators {
            if trace_inner(g, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The trace dual: the GF(2) kernel of `v ↦ (g * v)_g`, rank `2n - r`.
    pub fn dual(&self) -> AdditiveCode {
        // Rows swap(g) turn the symplectic form into a plain dot product.
        // Bring them to reduced row-echelon form, then read off one kernel
        // vector per free column.
        let cols = 2 * self.n;
        let mut rows: Vec<Gf4Vector> = self.generators.iter().map(Gf4Vector::swapped).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            let Some(found) = (next..rows.len()).find(|&i| rows[i].column(c)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && row.column(c) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(c);
            next += 1;
        }
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis = (0..cols).filter(|&f| !is_pivot[f]).map(|f| {
            let mut v = Gf4Vector::zeros(self.n);
            v.flip_column(f);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.column(f) {
                    v.flip_column(p);
                }
            }
            v
        });
        AdditiveCode::from_generators(self.n, basis).expect("kernel rows have length n")
    }

    /// All `2^r` codewords in Gray-code order starting from zero.
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        if self.rank() > ENUMERATION_CAP_LOG2 {
            return Err(Error::EnumerationCap {
                rank: self.rank(),
                cap: ENUMERATION_CAP_LOG2,
            });
        }
        Ok(Codewords {
            generators: &self.generators,
            current: Gf4Vector::zeros(self.n),
            index: 0,
            total: 1u64 << self.rank(),
        })
    }

    /// Extends the code by `e ∈ C⊥ \ C`, giving an `[[n, k-1]]` stabilizer.
    pub fn adjoin_error(&self, e: &Gf4Vector) -> Result<AdditiveCode> {
        if e.len() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: e.len(),
            });
        }
        if self.contains(e) {
            return Err(Error::AdjoinInCode);
        }
        if !self.is_orthogonal_to(e)? {
            return Err(Error::AdjoinNotInDual);
        }
        AdditiveCode::from_generators(
            self.n,
            self.generators.iter().cloned().chain(std::iter::once(e.clone())),
        )
    }
}

/// Iterator over the words of an [`AdditiveCode`].
pub struct Codewords<'a> {
    generators: &'a [Gf4Vector],
    current: Gf4Vector,
    index: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Gf4Vector;

    fn next(&mut self) -> Option<Gf4Vector> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current ^= &self.generators[flip];
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords<'_> {}
