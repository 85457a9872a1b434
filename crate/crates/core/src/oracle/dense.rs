use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gf4::{Gf4, Gf4Vector};

pub type C64 = Complex<f64>;

pub const DEFAULT_ORACLE_CAP: usize = 6;
pub const COMPOSITE_CAP: usize = 4;

/// Largest `n` the dense oracle accepts; `QED_ORACLE_CAP` overrides the
/// default of 6.
pub fn oracle_cap() -> usize {
    std::env::var("QED_ORACLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::OracleCap { n, cap })
    } else {
        Ok(())
    }
}

/// A square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    matrix: DMatrix<C64>,
}

impl DenseOperator {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(DenseOperator { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        DenseOperator {
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            matrix: DMatrix::zeros(dim, dim),
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `log2(dim)` when the dimension is a power of two.
    pub fn qubits(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn mul(&self, other: &DenseOperator) -> Self {
        DenseOperator {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn kron(&self, other: &DenseOperator) -> Self {
        DenseOperator {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        DenseOperator {
            matrix: &self.matrix * s,
        }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &DenseOperator) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.distance(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.adjoint()).distance(&DenseOperator::identity(self.dim())) <= tol
    }

    /// `Tr(A B)` without forming the product.
    pub fn trace_product(&self, other: &DenseOperator) -> C64 {
        let d = self.dim();
        let mut t = C64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                t += self.matrix[(i, j)] * other.matrix[(j, i)];
            }
        }
        t
    }
}

impl std::ops::Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl std::ops::Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The 2x2 matrix of a single-qubit Pauli: I, σx, σz, σy for 0, 1, ω, ω².
pub fn single_qubit(s: Gf4) -> DMatrix<C64> {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match s {
        Gf4::Zero => DMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        Gf4::One => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        Gf4::Omega => DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        Gf4::OmegaSq => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
    }
}

/// `τ_1 ⊗ ... ⊗ τ_n` with unit phase. Position 0 is the leftmost factor.
pub fn pauli_matrix(e: &Gf4Vector) -> Result<DenseOperator> {
    check_cap(e.len(), oracle_cap())?;
    Ok(pauli_matrix_unchecked(e))
}

pub(crate) fn pauli_matrix_unchecked(e: &Gf4Vector) -> DenseOperator {
    let matrix = e
        .symbols()
        .fold(DMatrix::identity(1, 1), |acc: DMatrix<C64>, s| acc.kronecker(&single_qubit(s)));
    DenseOperator { matrix }
}

/// Pauli action on a state as a signed permutation. Agrees with
/// [`pauli_matrix`]; used in inner loops where the dense product is wasteful.
#[derive(Clone, Copy, Debug)]
pub struct PauliAction {
    flip: usize,
    zmask: usize,
    phase: C64,
}

impl PauliAction {
    pub fn new(e: &Gf4Vector) -> Self {
        let n = e.len();
        let (mut flip, mut zmask, mut ys) = (0usize, 0usize, 0u32);
        for i in 0..n {
            let bit = 1usize << (n - 1 - i);
            let (x, z) = (e.x_bit(i), e.z_bit(i));
            if x {
                flip |= bit;
            }
            if z {
                zmask |= bit;
            }
            if x && z {
                ys += 1;
            }
        }
        let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][(ys % 4) as usize];
        PauliAction { flip, zmask, phase }
    }

    /// Writes `E v` into `out`.
    pub fn apply_into(&self, v: &[C64], out: &mut [C64]) {
        for (b, &amp) in v.iter().enumerate() {
            let sign = if (b & self.zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[b ^ self.flip] = self.phase * amp * sign;
        }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(v.len());
        self.apply_into(v.as_slice(), out.as_mut_slice());
        out
    }
}

/// Which factor of `V ⊗ W` is traced out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    V,
    W,
}

/// Partial trace of an operator on `V ⊗ W` with `dims = (dim V, dim W)`;
/// the composite index is `i * dim W + j`.
pub fn partial_trace(m: &DenseOperator, dims: (usize, usize), over: Subsystem) -> Result<DenseOperator> {
    let (dv, dw) = dims;
    if m.dim() != dv * dw {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} on a {dv}x{dw} system",
            m.dim()
        )));
    }
    let a = &m.matrix;
    let matrix = match over {
        Subsystem::V => DMatrix::from_fn(dw, dw, |j, jp| (0..dv).map(|i| a[(i * dw + j, i * dw + jp)]).sum()),
        Subsystem::W => DMatrix::from_fn(dv, dv, |i, ip| (0..dw).map(|j| a[(i * dw + j, ip * dw + j)]).sum()),
    };
    Ok(DenseOperator { matrix })
}
