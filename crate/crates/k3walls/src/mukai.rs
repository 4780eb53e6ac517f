//! Exact arithmetic in the algebraic Mukai lattice of a degree-2d K3 surface.
//!
//! A vector (r, c, s) stands for r + cH + s·[pt], and the pairing is
//! (v, w) = 2d·c_v·c_w − r_v·s_w − s_v·r_w with H² = 2d. Everything here is
//! integer or rational arithmetic; there is no floating point anywhere.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::K3Error;

/// Integer triple (r, c, s) in the algebraic Mukai lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MukaiVector {
    pub r: i64,
    pub c: i64,
    pub s: i64,
}

impl MukaiVector {
    pub const fn new(r: i64, c: i64, s: i64) -> Self {
        MukaiVector { r, c, s }
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.c == 0 && self.s == 0
    }

    pub fn neg(&self) -> Self {
        MukaiVector::new(-self.r, -self.c, -self.s)
    }

    pub fn add(&self, other: &MukaiVector) -> Self {
        MukaiVector::new(self.r + other.r, self.c + other.c, self.s + other.s)
    }

    pub fn sub(&self, other: &MukaiVector) -> Self {
        MukaiVector::new(self.r - other.r, self.c - other.c, self.s - other.s)
    }

    pub fn scale(&self, t: i64) -> Self {
        MukaiVector::new(t * self.r, t * self.c, t * self.s)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && gcd3(self.r, self.c, self.s) == 1
    }
}

impl std::fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.r, self.c, self.s)
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.unsigned_abs()
        .gcd(&b.unsigned_abs())
        .gcd(&c.unsigned_abs()) as i64
}

fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("Mukai lattice arithmetic exceeded 64-bit range")
}

/// Mukai pairing (v, w) = 2d·c_v·c_w − r_v·s_w − s_v·r_w.
pub fn pairing(v: &MukaiVector, w: &MukaiVector, d: i64) -> i64 {
    debug_assert!(d >= 1);
    let (rv, cv, sv) = (v.r as i128, v.c as i128, v.s as i128);
    let (rw, cw, sw) = (w.r as i128, w.c as i128, w.s as i128);
    to_i64(2 * d as i128 * cv * cw - rv * sw - sv * rw)
}

/// Self-pairing v² = (v, v); always even.
pub fn square(v: &MukaiVector, d: i64) -> i64 {
    pairing(v, v, d)
}

/// Divide out the gcd of the components. Errors on the zero vector.
pub fn primitive_part(v: &MukaiVector) -> Result<(MukaiVector, i64), K3Error> {
    if v.is_zero() {
        return Err(K3Error::DegenerateVector);
    }
    let g = gcd3(v.r, v.c, v.s);
    Ok((MukaiVector::new(v.r / g, v.c / g, v.s / g), g))
}

/// Positive class: square ≥ −2 together with lexicographic positivity
/// (r > 0; or r = 0, c > 0; or r = c = 0, s > 0).
pub fn is_positive_class(v: &MukaiVector, d: i64) -> bool {
    if square(v, d) < -2 {
        return false;
    }
    v.r > 0 || (v.r == 0 && v.c > 0) || (v.r == 0 && v.c == 0 && v.s > 0)
}

/// Gram determinant v²·w² − (v,w)²; the pair spans a hyperbolic lattice iff
/// this is negative.
pub fn gram_determinant(v: &MukaiVector, w: &MukaiVector, d: i64) -> i64 {
    let sv = square(v, d) as i128;
    let sw = square(w, d) as i128;
    let p = pairing(v, w, d) as i128;
    to_i64(sv * sw - p * p)
}

/// All s = x·v + y·w with s² = `target_square` and (s, v) = `pairing_with_v`,
/// solved exactly inside the rank-2 lattice ℤv + ℤw.
///
/// Eliminating x from the linear condition leaves
/// y² = (p² − v²·t) / ((v,w)² − v²·w²), whose right-hand side is well defined
/// because the pair is hyperbolic; the rest is an integrality check.
pub fn solve_in_rank2(
    v: &MukaiVector,
    w: &MukaiVector,
    target_square: i64,
    pairing_with_v: i64,
    d: i64,
) -> Result<Vec<MukaiVector>, K3Error> {
    if gram_determinant(v, w, d) >= 0 {
        return Err(K3Error::NotHyperbolic);
    }
    let alpha = square(v, d) as i128;
    let beta = pairing(v, w, d) as i128;
    let gamma = square(w, d) as i128;
    let t = target_square as i128;
    let p = pairing_with_v as i128;

    let mut out = Vec::new();
    if alpha != 0 {
        // denominator = (v,w)² − v²w² = −gram > 0
        let den = beta * beta - alpha * gamma;
        let num = p * p - alpha * t;
        if num >= 0 && num % den == 0 {
            if let Some(y0) = exact_sqrt(num / den) {
                let ys = if y0 == 0 { vec![0] } else { vec![y0, -y0] };
                for y in ys {
                    let xnum = p - beta * y;
                    if xnum % alpha == 0 {
                        let x = xnum / alpha;
                        out.push(v.scale(to_i64(x)).add(&w.scale(to_i64(y))));
                    }
                }
            }
        }
    } else {
        // alpha = 0 forces beta ≠ 0 (gram = −beta² < 0)
        if p % beta == 0 {
            let y = p / beta;
            if y != 0 {
                let xnum = t - gamma * y * y;
                let xden = 2 * beta * y;
                if xnum % xden == 0 {
                    out.push(v.scale(to_i64(xnum / xden)).add(&w.scale(to_i64(y))));
                }
            }
            // y = 0 with t = p = 0 is the degenerate line ℤv; no finite answer
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Integer square root check: Some(√n) if n is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut lo: i128 = 0;
    let mut hi: i128 = 1;
    while hi * hi < n {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if mid * mid < n {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if lo * lo == n {
        Some(lo)
    } else {
        None
    }
}

/// Integer coordinates of `target` in the basis (v, w), if they exist.
pub fn membership_in_lattice(
    target: &MukaiVector,
    v: &MukaiVector,
    w: &MukaiVector,
) -> Result<Option<(i64, i64)>, K3Error> {
    let vv = [v.r as i128, v.c as i128, v.s as i128];
    let ww = [w.r as i128, w.c as i128, w.s as i128];
    let tt = [target.r as i128, target.c as i128, target.s as i128];

    // pick a coordinate pair with nonzero 2x2 determinant
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut basis_det = None;
    for (i, j) in pairs {
        let det = vv[i] * ww[j] - vv[j] * ww[i];
        if det != 0 {
            basis_det = Some((i, j, det));
            break;
        }
    }
    let Some((i, j, det)) = basis_det else {
        return Err(K3Error::DependentBasis);
    };

    let xn = tt[i] * ww[j] - tt[j] * ww[i];
    let yn = vv[i] * tt[j] - vv[j] * tt[i];
    if xn % det != 0 || yn % det != 0 {
        return Ok(None);
    }
    let (x, y) = (xn / det, yn / det);
    // verify all three components, not just the two solved ones
    for t in 0..3 {
        if x * vv[t] + y * ww[t] != tt[t] {
            return Ok(None);
        }
    }
    Ok(Some((to_i64(x), to_i64(y))))
}
