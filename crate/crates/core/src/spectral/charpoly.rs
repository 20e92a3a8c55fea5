//! Characteristic polynomials of tridiagonal matrices by the three-term
//! recurrence, and the closed-form low coefficients for paths.

use num_traits::{FromPrimitive, Num};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// `det(sI - Q)` for the tridiagonal `Q` with diagonal `a`, superdiagonal
/// `b` and subdiagonal `c`.
///
/// Runs `ψ_m = (s - a_m) ψ_{m-1} - b_{m-1} c_{m-1} ψ_{m-2}` from `ψ_0 = 1`.
/// Works over any ring, so rational inputs give exact coefficients.
pub fn tridiag_charpoly<T: Clone + Num>(a: &[T], b: &[T], c: &[T]) -> Result<Polynomial<T>> {
    let m = a.len();
    let off = m.saturating_sub(1);
    if b.len() != off || c.len() != off {
        return Err(Error::Shape(format!(
            "diagonal of length {m} needs off-diagonals of length {off}, got {} and {}",
            b.len(),
            c.len()
        )));
    }
    Ok(tridiag_sequence(a, b, c).pop().expect("sequence starts with ψ_0"))
}

/// Every leading principal characteristic polynomial `ψ_0, …, ψ_m`.
pub(crate) fn tridiag_sequence<T: Clone + Num>(a: &[T], b: &[T], c: &[T]) -> Vec<Polynomial<T>> {
    let mut seq = Vec::with_capacity(a.len() + 1);
    seq.push(Polynomial::one());
    for (i, ai) in a.iter().enumerate() {
        let mut next = Polynomial::root_factor(ai.clone()) * seq[i].clone();
        if i > 0 {
            let bc = b[i - 1].clone() * c[i - 1].clone();
            next = next - seq[i - 1].scale(bc);
        }
        seq.push(next);
    }
    seq
}

/// Coefficients of `s`, `s²`, `s³` and `s^{n-1}` in `det(sI + L_n)` for the
/// path Laplacian `L_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLowCoeffs<T> {
    pub s1: T,
    pub s2: T,
    pub s3: T,
    pub s_top: T,
}

/// `(n, n(n²-1)/6, n(n²-1)(n²-4)/120, 2(n-1))`, each an integer.
pub fn path_charpoly_lowcoeffs<T: Num + FromPrimitive>(n: usize) -> Result<PathLowCoeffs<T>> {
    if n < 2 {
        return Err(Error::InvalidOrder { n, reason: "a path needs at least two nodes" });
    }
    let m = n as i128;
    let conv = |v: i128| {
        T::from_i128(v)
            .ok_or(Error::InvalidParameter { name: "n", reason: format!("coefficient {v} not representable") })
    };
    Ok(PathLowCoeffs {
        s1: conv(m)?,
        s2: conv(m * (m * m - 1) / 6)?,
        s3: conv(m * (m * m - 1) * (m * m - 4) / 120)?,
        s_top: conv(2 * (m - 1))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_examples() {
        assert_eq!(tridiag_charpoly::<i64>(&[], &[], &[]).unwrap(), Polynomial::one());
        assert_eq!(tridiag_charpoly(&[1, 1], &[-1], &[-1]).unwrap().coeffs(), &[0, -2, 1]);
        assert_eq!(tridiag_charpoly(&[1, 2, 1], &[-1, -1], &[-1, -1]).unwrap().coeffs(), &[0, 3, -4, 1]);
        assert!(matches!(tridiag_charpoly(&[1, 2], &[1, 1], &[1]), Err(Error::Shape(_))));
    }

    #[test]
    fn low_coefficients() {
        let c = path_charpoly_lowcoeffs::<i64>(2).unwrap();
        assert_eq!((c.s1, c.s2, c.s3, c.s_top), (2, 1, 0, 2));
        let c = path_charpoly_lowcoeffs::<i64>(3).unwrap();
        assert_eq!((c.s1, c.s2, c.s_top), (3, 4, 4));
        let c = path_charpoly_lowcoeffs::<i64>(5).unwrap();
        assert_eq!((c.s1, c.s2, c.s3), (5, 20, 21));
    }
}
