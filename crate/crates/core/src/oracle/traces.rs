use num_bigint::BigUint;

use super::dense::{check_cap, oracle_cap, pauli_matrix_unchecked, DenseOperator, C64};
use crate::code::AdditiveCode;
use crate::enumerators::EnumeratorPair;
use crate::error::{Error, Result};
use crate::gf4::Gf4Vector;

/// Largest distance of an oracle enumerator from the nearest integer.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Raw per-weight sums `Σ Tr²(EP)` and `Σ Tr(EPEP)` over all `4^n` errors.
#[derive(Clone, Debug)]
pub struct TraceSums {
    pub tr_ep_squared: Vec<f64>,
    pub tr_epep: Vec<f64>,
    /// Largest imaginary part seen in either trace.
    pub max_imaginary: f64,
}

pub fn trace_sums(p: &DenseOperator) -> Result<TraceSums> {
    let n = p
        .qubits()
        .ok_or_else(|| Error::DimensionMismatch(format!("dimension {} is not 2^n", p.dim())))?;
    check_cap(n, oracle_cap())?;
    let mut sums = TraceSums {
        tr_ep_squared: vec![0.0; n + 1],
        tr_epep: vec![0.0; n + 1],
        max_imaginary: 0.0,
    };
    for idx in 0..4u64.pow(n as u32) {
        let e = Gf4Vector::from_index(n, idx);
        let ep = pauli_matrix_unchecked(&e).mul(p);
        let t1: C64 = ep.trace();
        let t2: C64 = ep.trace_product(&ep);
        sums.max_imaginary = sums.max_imaginary.max(t1.im.abs()).max(t2.im.abs());
        let w = e.weight();
        sums.tr_ep_squared[w] += t1.re * t1.re;
        sums.tr_epep[w] += t2.re;
    }
    Ok(sums)
}

fn round_exact(values: &[f64], scale: f64) -> Result<Vec<BigUint>> {
    values
        .iter()
        .enumerate()
        .map(|(weight, &v)| {
            let x = v / scale;
            let r = x.round();
            let residual = (x - r).abs();
            if residual >= ROUNDING_TOLERANCE || r < 0.0 {
                return Err(Error::Residual { weight, residual });
            }
            Ok(BigUint::from(r as u64))
        })
        .collect()
}

/// `B_i = K⁻² Σ_{wt E = i} Tr²(EP)` and `B⊥_i = K⁻¹ Σ_{wt E = i} Tr(EPEP)`,
/// rounded to integers.
pub fn enumerators_bruteforce(p: &DenseOperator, k: usize) -> Result<EnumeratorPair> {
    let sums = trace_sums(p)?;
    if sums.max_imaginary >= IMAGINARY_TOLERANCE {
        return Err(Error::Residual {
            weight: 0,
            residual: sums.max_imaginary,
        });
    }
    let kf = k as f64;
    let b = round_exact(&sums.tr_ep_squared, kf * kf)?;
    let bperp = round_exact(&sums.tr_epep, kf)?;
    EnumeratorPair::new(sums.tr_epep.len() - 1, BigUint::from(k), b, bperp)
}

/// The three outcomes for an error acting on a stabilizer code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// `e ∈ C`: acts as a scalar on the code.
    Trivial,
    /// `e ∉ C⊥`: maps the code into its orthogonal complement.
    Detected,
    /// `e ∈ C⊥ \ C`: maps the code to itself nontrivially.
    Undetectable,
}

pub fn classify_error(code: &AdditiveCode, e: &Gf4Vector) -> Result<ErrorClass> {
    if code.contains(e) {
        Ok(ErrorClass::Trivial)
    } else if code.is_orthogonal_to(e)? {
        Ok(ErrorClass::Undetectable)
    } else {
        Ok(ErrorClass::Detected)
    }
}

/// Dense predicate: `PEP = 0` is detected, `(I-P)EP = 0` with `PEP = ±P`
/// is trivial, `(I-P)EP = 0` otherwise is undetectable.
pub fn classify_error_dense(p: &DenseOperator, e: &Gf4Vector) -> Result<ErrorClass> {
    let tol = 1e-10;
    if p.qubits() != Some(e.len()) {
        return Err(Error::DimensionMismatch(format!(
            "word of length {} against a {}-dimensional projector",
            e.len(),
            p.dim()
        )));
    }
    check_cap(e.len(), oracle_cap())?;
    let ep = pauli_matrix_unchecked(e).mul(p);
    let pep = p.mul(&ep);
    if pep.frobenius_norm() < tol {
        return Ok(ErrorClass::Detected);
    }
    let leak = &ep - &pep;
    if leak.frobenius_norm() >= tol {
        return Err(Error::ProjectorAssertion(format!(
            "{e} neither preserves nor annihilates the code"
        )));
    }
    if pep.distance(p) < tol || (&pep + p).frobenius_norm() < tol {
        Ok(ErrorClass::Trivial)
    } else {
        Ok(ErrorClass::Undetectable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codefile::parse_code;
    use crate::oracle::group::stabilizer_projector;

    #[test]
    fn one_qubit_whole_space() {
        let pair = enumerators_bruteforce(&DenseOperator::identity(2), 2).unwrap();
        assert_eq!(pair.b(), [BigUint::from(1u8), BigUint::from(0u8)]);
        assert_eq!(pair.bperp(), [BigUint::from(1u8), BigUint::from(3u8)]);
    }

    #[test]
    fn classes_for_c422() {
        let code = parse_code("XXXX\nZZZZ").unwrap();
        let (_, p) = stabilizer_projector(&code).unwrap();
        for (label, class) in [
            ("IIII", ErrorClass::Trivial),
            ("YYYY", ErrorClass::Trivial),
            ("XIII", ErrorClass::Detected),
            ("XXII", ErrorClass::Undetectable),
        ] {
            let e: Gf4Vector = label.parse().unwrap();
            assert_eq!(classify_error(&code, &e).unwrap(), class);
            assert_eq!(classify_error_dense(&p, &e).unwrap(), class);
        }
    }

    #[test]
    fn non_integral_traces_are_reported() {
        // 0.6|00> + 0.8|11> is not a stabilizer state; B_1 = 2·0.28² is fractional.
        let v = nalgebra::DVector::from_vec(vec![
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.8, 0.0),
        ]);
        let v = v.normalize();
        let p = DenseOperator::new(&v * v.adjoint()).unwrap();
        let s = trace_sums(&p).unwrap();
        assert!(s.max_imaginary < 1e-12);
        assert!(enumerators_bruteforce(&p, 1).is_err());
    }
}
