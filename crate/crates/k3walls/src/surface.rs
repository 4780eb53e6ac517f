//! Surface-side input handling: normalization of (degree, points) into the
//! (Δ, h, k) parametrization, the movable cone, the wall-free k bound, and the
//! Pell cross-check for Hilb² from the square-degree criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::K3Error;
use crate::mukai::{self, MukaiVector};

/// Exact rational scalar used throughout (Γ, bounds, plane geometry).
pub type Rational = Ratio<i128>;

pub fn rational(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

/// Normalized surface data: H² = 2d = 2Δk², Hilbert scheme of N + 1 = Δh² + 1
/// points, v = (1, 0, −Δh²).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceParams {
    pub delta: i64,
    pub h: i64,
    pub k: i64,
    pub d: i64,
    pub n: i64,
    pub v: MukaiVector,
}

impl SurfaceParams {
    pub fn delta_h2(&self) -> i64 {
        self.delta * self.h * self.h
    }

    pub fn delta_k2(&self) -> i64 {
        self.delta * self.k * self.k
    }
}

/// A ray λH̃ + μB in the Néron–Severi basis of the Hilbert scheme, stored
/// primitive with λ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsRay {
    pub coeff_htilde: i64,
    pub coeff_b: i64,
}

impl NsRay {
    pub fn new(coeff_htilde: i64, coeff_b: i64) -> Self {
        assert!(
            coeff_htilde != 0 || coeff_b != 0,
            "NsRay must be a nonzero ray"
        );
        let g = coeff_htilde.unsigned_abs().gcd(&coeff_b.unsigned_abs()) as i64;
        let (mut a, mut b) = (coeff_htilde / g, coeff_b / g);
        if a < 0 || (a == 0 && b < 0) {
            a = -a;
            b = -b;
        }
        NsRay {
            coeff_htilde: a,
            coeff_b: b,
        }
    }
}

/// Result of the SYZ square test on (d, N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    Params(SurfaceParams),
    /// d·N is not a perfect square; carries d·N and its square-free part.
    SyzFailure { nd: i64, square_free_part: i64 },
}

/// Square-free part of a positive integer by trial division.
fn square_free_part(mut n: i64) -> i64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}

/// Normalize (d, N) with H² = 2d and N + 1 points. Succeeds iff d·N is a
/// perfect square, in which case d/N = k²/h² in lowest terms and Δ = d/k².
pub fn normalize(d: i64, n: i64) -> NormalizeOutcome {
    assert!(d >= 1 && n >= 1);
    let nd = d.checked_mul(n).expect("d*N overflow");
    if mukai::exact_sqrt(nd as i128).is_none() {
        return NormalizeOutcome::SyzFailure {
            nd,
            square_free_part: square_free_part(nd),
        };
    }
    let g = d.gcd(&n);
    let (p, q) = (d / g, n / g);
    // d·N square with gcd(p,q) = 1 forces p and q to be squares themselves
    let k = mukai::exact_sqrt(p as i128).expect("reduced numerator must be a square") as i64;
    let h = mukai::exact_sqrt(q as i128).expect("reduced denominator must be a square") as i64;
    assert!(d % (k * k) == 0, "k^2 must divide d exactly");
    let delta = d / (k * k);
    assert_eq!(delta * h * h, n, "Delta*h^2 must reproduce N exactly");
    NormalizeOutcome::Params(build(delta, h, k))
}

fn build(delta: i64, h: i64, k: i64) -> SurfaceParams {
    let d = delta * k * k;
    let n = delta * h * h;
    SurfaceParams {
        delta,
        h,
        k,
        d,
        n,
        v: MukaiVector::new(1, 0, -n),
    }
}

/// Construct directly from the (Δ, h, k) triple.
pub fn from_triple(delta: i64, h: i64, k: i64) -> Result<SurfaceParams, K3Error> {
    assert!(delta >= 1 && h >= 1 && k >= 1);
    if h.gcd(&k) != 1 {
        return Err(K3Error::GcdViolation { h, k });
    }
    Ok(build(delta, h, k))
}

/// Movable cone ⟨H̃, hH̃ − kB⟩.
pub fn movable_cone(params: &SurfaceParams) -> (NsRay, NsRay) {
    (NsRay::new(1, 0), NsRay::new(params.h, -params.k))
}

/// The divisor hH̃ − kB inducing the rational Lagrangian fibration.
pub fn fibration_divisor(params: &SurfaceParams) -> NsRay {
    NsRay::new(params.h, -params.k)
}

/// Δh(h−1)² + 3h/2: every k at least this bound (with gcd(h,k) = 1) carries
/// no wall.
pub fn sufficient_k_bound(delta: i64, h: i64) -> Rational {
    assert!(delta >= 1 && h >= 1);
    let (delta, h) = (delta as i128, h as i128);
    Rational::from_integer(delta * h * (h - 1) * (h - 1)) + rational(3 * h, 2)
}

/// Minimal non-negative solution of X² − 4dY² = 5, if any.
///
/// When d = k² the left side factors and a solution exists only for k = 1.
/// Otherwise the fundamental unit of X² − 4dY² = 1 (continued fraction of
/// √(4d)) bounds the Y-range to search for the minimal representative.
pub fn pell_check_hilb2(d: i64) -> Option<(i64, i64)> {
    assert!(d >= 1);
    if let Some(k) = mukai::exact_sqrt(d as i128) {
        // (X − 2kY)(X + 2kY) = 5 forces X − 2kY = 1, X + 2kY = 5
        return if k == 1 { Some((3, 1)) } else { None };
    }
    let big_d = BigInt::from(4 * d);
    let (x1, y1) = pell_fundamental_unit(&big_d);
    // Nagell's bound for x² − Dy² = N with N > 0: the fundamental solution of
    // each class has 0 ≤ Y² ≤ N·y1²/(2(x1 + 1)).
    let y_sq_max = (BigInt::from(5) * &y1 * &y1) / (BigInt::from(2) * (&x1 + BigInt::one()));
    let mut y = BigInt::zero();
    while &y * &y <= y_sq_max {
        let rhs = BigInt::from(5) + &big_d * &y * &y;
        if let Some(x) = big_sqrt_exact(&rhs) {
            let xi = i64::try_from(&x).expect("Pell solution exceeds i64");
            let yi = i64::try_from(&y).expect("Pell solution exceeds i64");
            return Some((xi, yi));
        }
        y += 1;
    }
    None
}

/// Fundamental solution of x² − Dy² = 1 for non-square D > 1, via the
/// continued fraction expansion of √D.
fn pell_fundamental_unit(d: &BigInt) -> (BigInt, BigInt) {
    let a0 = big_isqrt(d);
    let mut m = BigInt::zero();
    let mut den = BigInt::one();
    let mut a = a0.clone();

    let mut p_prev = BigInt::one();
    let mut p = a0.clone();
    let mut q_prev = BigInt::zero();
    let mut q = BigInt::one();

    loop {
        if &p * &p - d * &q * &q == BigInt::one() {
            return (p, q);
        }
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
}

fn big_isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        match normalize(4, 9) {
            NormalizeOutcome::Params(p) => {
                assert_eq!((p.delta, p.h, p.k), (1, 3, 2));
            }
            _ => panic!("expected params"),
        }
        assert_eq!(
            normalize(2, 1),
            NormalizeOutcome::SyzFailure {
                nd: 2,
                square_free_part: 2
            }
        );
        match normalize(9, 1) {
            NormalizeOutcome::Params(p) => {
                assert_eq!((p.delta, p.h, p.k), (1, 1, 3));
            }
            _ => panic!("expected params"),
        }
    }

    #[test]
    fn from_triple_examples() {
        let p = from_triple(1, 2, 3).unwrap();
        assert_eq!((p.d, p.n), (9, 4));
        assert_eq!(p.v, MukaiVector::new(1, 0, -4));
        assert!(matches!(
            from_triple(1, 2, 2),
            Err(K3Error::GcdViolation { h: 2, k: 2 })
        ));
        let p = from_triple(5, 1, 2).unwrap();
        assert_eq!((p.d, p.n), (20, 5));
        assert_eq!(p.v, MukaiVector::new(1, 0, -5));
    }

    #[test]
    fn movable_cone_examples() {
        let p = from_triple(1, 2, 3).unwrap();
        assert_eq!(movable_cone(&p), (NsRay::new(1, 0), NsRay::new(2, -3)));
        let p = from_triple(1, 1, 1).unwrap();
        assert_eq!(movable_cone(&p), (NsRay::new(1, 0), NsRay::new(1, -1)));
        let p = from_triple(1, 3, 2).unwrap();
        assert_eq!(movable_cone(&p), (NsRay::new(1, 0), NsRay::new(3, -2)));
    }

    #[test]
    fn fibration_divisor_examples() {
        assert_eq!(
            fibration_divisor(&from_triple(1, 2, 3).unwrap()),
            NsRay::new(2, -3)
        );
        assert_eq!(
            fibration_divisor(&from_triple(1, 1, 2).unwrap()),
            NsRay::new(1, -2)
        );
        assert_eq!(
            fibration_divisor(&from_triple(2, 1, 1).unwrap()),
            NsRay::new(1, -1)
        );
    }

    #[test]
    fn sufficient_k_bound_examples() {
        assert_eq!(sufficient_k_bound(1, 1), rational(3, 2));
        assert_eq!(sufficient_k_bound(1, 2), Rational::from_integer(5));
        assert_eq!(sufficient_k_bound(1, 3), rational(33, 2));
        for delta in 1..=6 {
            assert_eq!(sufficient_k_bound(delta, 1), rational(3, 2));
        }
    }

    #[test]
    fn pell_examples() {
        assert_eq!(pell_check_hilb2(1), Some((3, 1)));
        assert_eq!(pell_check_hilb2(4), None);
        assert_eq!(pell_check_hilb2(9), None);
    }

    #[test]
    fn pell_nonsquare_solutions_verify() {
        for d in 1..=60 {
            if let Some((x, y)) = pell_check_hilb2(d) {
                assert_eq!(x as i128 * x as i128 - 4 * d as i128 * y as i128 * y as i128, 5);
            }
        }
        // d = 5: X² − 20Y² = 5 has (5, 1)
        assert_eq!(pell_check_hilb2(5), Some((5, 1)));
    }

    #[test]
    fn pell_square_iff_k1() {
        for k in 1i64..=50 {
            let sol = pell_check_hilb2(k * k);
            assert_eq!(sol.is_some(), k == 1, "k = {k}");
        }
    }

    #[test]
    fn normalize_round_trip() {
        for delta in 1..=10 {
            for h in 1..=10 {
                for k in 1..=10 {
                    if (h as i64).gcd(&(k as i64)) != 1 {
                        continue;
                    }
                    let p = from_triple(delta, h, k).unwrap();
                    assert_eq!(normalize(p.d, p.n), NormalizeOutcome::Params(p));
                    assert_eq!(
                        crate::mukai::square(&p.v, p.d),
                        2 * p.delta_h2()
                    );
                }
            }
        }
    }
}
