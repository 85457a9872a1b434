use num_complex::Complex;

use super::dense::{check_cap, oracle_cap, pauli_matrix_unchecked, DenseOperator, C64};
use crate::code::AdditiveCode;
use crate::error::{Error, Result};
use crate::gf4::{trace_inner, Gf4, Gf4Vector};

/// `PHASE[a][b] = k` where `τ_a τ_b = i^k τ_(a+b)`, indexed I, X, Z, Y.
const PHASE: [[u8; 4]; 4] = [
    [0, 0, 0, 0],
    [0, 0, 3, 1], // XZ = -iY, XY = iZ
    [0, 1, 0, 3], // ZX = iY, ZY = -iX
    [0, 3, 1, 0], // YX = -iZ, YZ = iX
];

fn index(s: Gf4) -> usize {
    match s {
        Gf4::Zero => 0,
        Gf4::One => 1,
        Gf4::Omega => 2,
        Gf4::OmegaSq => 3,
    }
}

/// `E_a E_b = i^k E_(a+b)` for bare tensor products; returns `k mod 4`.
pub fn product_phase(a: &Gf4Vector, b: &Gf4Vector) -> u8 {
    a.symbols()
        .zip(b.symbols())
        .fold(0u8, |k, (sa, sb)| (k + PHASE[index(sa)][index(sb)]) % 4)
}

/// A signed Pauli operator `±E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPauli {
    pub negative: bool,
    pub word: Gf4Vector,
}

impl SignedPauli {
    pub fn sign(&self) -> f64 {
        if self.negative {
            -1.0
        } else {
            1.0
        }
    }
}

/// An Abelian group of signed Pauli operators not containing `-I`.
#[derive(Clone, Debug)]
pub struct SignedPauliGroup {
    n: usize,
    generators: Vec<Gf4Vector>,
    elements: Vec<SignedPauli>,
}

impl SignedPauliGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Gf4Vector] {
        &self.generators
    }

    pub fn elements(&self) -> &[SignedPauli] {
        &self.elements
    }

    pub fn find(&self, word: &Gf4Vector) -> Option<&SignedPauli> {
        self.elements.iter().find(|e| &e.word == word)
    }
}

/// Generates the group from `+1`-phased generators, tracking signs.
pub fn close_group(n: usize, generators: &[Gf4Vector]) -> Result<SignedPauliGroup> {
    for (i, g) in generators.iter().enumerate() {
        if g.len() != n {
            return Err(Error::LengthMismatch { left: n, right: g.len() });
        }
        for (j, h) in generators.iter().enumerate().skip(i + 1) {
            if trace_inner(g, h)? {
                return Err(Error::NonCommuting(i, j));
            }
        }
    }
    if generators.len() >= 63 {
        return Err(Error::InvalidArgument("too many generators to close".into()));
    }
    let mut elements = Vec::with_capacity(1 << generators.len());
    let mut word = Gf4Vector::zeros(n);
    let mut phase = 0u8;
    elements.push(SignedPauli {
        negative: false,
        word: word.clone(),
    });
    for step in 1u64..(1u64 << generators.len()) {
        let g = &generators[step.trailing_zeros() as usize];
        phase = (phase + product_phase(&word, g)) % 4;
        word ^= g;
        if phase % 2 == 1 {
            return Err(Error::InvalidArgument("non-Hermitian product of commuting generators".into()));
        }
        let negative = phase == 2;
        if word.is_zero() {
            // a dependent generator set collapses onto ±I
            return Err(if negative {
                Error::MinusIdentity
            } else {
                Error::InvalidArgument("generators are not independent".into())
            });
        }
        elements.push(SignedPauli {
            negative,
            word: word.clone(),
        });
    }
    Ok(SignedPauliGroup {
        n,
        generators: generators.to_vec(),
        elements,
    })
}

/// `P = 2^-r Σ_{E ∈ S} sign(E) E`, with idempotence, Hermiticity, and
/// `Tr P = 2^(n-r)` asserted to 1e-10.
pub fn projector(group: &SignedPauliGroup) -> Result<DenseOperator> {
    check_cap(group.n, oracle_cap())?;
    let dim = 1usize << group.n;
    let mut p = DenseOperator::zeros(dim);
    for e in group.elements() {
        p = &p + &pauli_matrix_unchecked(&e.word).scale(Complex::new(e.sign(), 0.0));
    }
    let p = p.scale(C64::new(1.0 / group.elements.len() as f64, 0.0));
    let tol = 1e-10;
    if p.mul(&p).distance(&p) > tol {
        return Err(Error::ProjectorAssertion("P² ≠ P".into()));
    }
    if !p.is_hermitian(tol) {
        return Err(Error::ProjectorAssertion("P ≠ P*".into()));
    }
    let expected = (1u64 << (group.n - group.rank())) as f64;
    let tr = p.trace();
    if (tr.re - expected).abs() > tol || tr.im.abs() > tol {
        return Err(Error::ProjectorAssertion(format!("Tr P = {tr}, expected {expected}")));
    }
    Ok(p)
}

/// Stabilizer group and code projector of a self-orthogonal code.
pub fn stabilizer_projector(code: &AdditiveCode) -> Result<(SignedPauliGroup, DenseOperator)> {
    if !code.is_self_orthogonal() || code.k().is_none() {
        return Err(Error::NotSelfOrthogonal);
    }
    check_cap(code.n(), oracle_cap())?;
    let group = close_group(code.n(), code.generators())?;
    let p = projector(&group)?;
    Ok((group, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense::{pauli_matrix, single_qubit};

    fn i_pow(k: u8) -> C64 {
        [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][k as usize]
    }

    #[test]
    fn phase_table_matches_matrices() {
        for a in Gf4::ALL {
            for b in Gf4::ALL {
                let lhs = single_qubit(a) * single_qubit(b);
                let rhs = single_qubit(a + b) * i_pow(PHASE[index(a)][index(b)]);
                assert!((lhs - rhs).norm() < 1e-15, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn xxxx_zzzz_product_is_plus_yyyy() {
        let x: Gf4Vector = "XXXX".parse().unwrap();
        let z: Gf4Vector = "ZZZZ".parse().unwrap();
        assert_eq!(product_phase(&x, &z), 0);
        let g = close_group(4, &[x, z]).unwrap();
        assert_eq!(g.elements().len(), 4);
        let y = g.find(&"YYYY".parse().unwrap()).unwrap();
        assert!(!y.negative);
    }

    #[test]
    fn single_generator() {
        let g = close_group(2, &["XZ".parse().unwrap()]).unwrap();
        assert_eq!(g.elements().len(), 2);
        assert!(g.elements().iter().all(|e| !e.negative));
    }

    #[test]
    fn closure_signs_match_dense_products() {
        let gens: Vec<Gf4Vector> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let g = close_group(5, &gens[..3]).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let prod = pauli_matrix(&a.word)
                    .unwrap()
                    .mul(&pauli_matrix(&b.word).unwrap())
                    .scale(C64::new(a.sign() * b.sign(), 0.0));
                let c = g.find(&(&a.word ^ &b.word)).unwrap();
                let expected = pauli_matrix(&c.word).unwrap().scale(C64::new(c.sign(), 0.0));
                assert!(prod.distance(&expected) < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let x: Gf4Vector = "XI".parse().unwrap();
        let z: Gf4Vector = "ZI".parse().unwrap();
        assert_eq!(close_group(2, &[x.clone(), z]).unwrap_err(), Error::NonCommuting(0, 1));
        assert!(close_group(2, &[x.clone(), x]).is_err());
        // XX · YY = -ZZ, so {XX, YY, ZZ} contains -I.
        let gens: Vec<Gf4Vector> = ["XX", "YY", "ZZ"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(close_group(2, &gens).unwrap_err(), Error::MinusIdentity);
    }

    #[test]
    fn trivial_projector() {
        let g = close_group(2, &[]).unwrap();
        let p = projector(&g).unwrap();
        assert!(p.distance(&DenseOperator::identity(4)) < 1e-15);
    }
}
