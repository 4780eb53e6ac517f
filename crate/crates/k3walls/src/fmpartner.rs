//! Fourier–Mukai partner data for the Lagrangian fibration: the isotropic
//! vector u = (k, −h, Δkh²), the partner surface degree 2Δ, its Néron–Severi
//! generator through a normalized Bézout pair, the Brauer twist order and the
//! Beauville–Mukai support class.

use num_integer::Integer;
use serde::Serialize;

use crate::error::K3Error;
use crate::mukai::{self, MukaiVector};
use crate::surface::SurfaceParams;

/// The degree-0 Beauville–Mukai component is fixed only up to composing the
/// equivalence with a shift, so it stays symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnresolvedS;

impl std::fmt::Display for UnresolvedS {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("s (undetermined up to shift)")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FmPartnerReport {
    pub u: MukaiVector,
    /// degree of the partner surface, = 2Δ
    pub partner_degree: i64,
    /// (A, B) with B·h − A·k = 1 and 0 ≤ A < h
    pub bezout: (i64, i64),
    /// preimage (B, −A, Δ(−h + Akh)) of the NS generator under θ_u
    pub ns_generator_vector: MukaiVector,
    pub twist_order: i64,
    /// coefficient of H′ in the support curve C = hH′
    pub bm_class_curve_coeff: i64,
    pub bm_class_s: UnresolvedS,
}

/// u = (k, −h, Δkh²); isotropic and primitive since gcd(h, k) = 1.
pub fn fm_vector(params: &SurfaceParams) -> MukaiVector {
    MukaiVector::new(
        params.k,
        -params.h,
        params.delta * params.k * params.h * params.h,
    )
}

/// Extended-gcd pair with B·h − A·k = 1, normalized to 0 ≤ A < h.
pub fn bezout(h: i64, k: i64) -> Result<(i64, i64), K3Error> {
    let e = h.extended_gcd(&k);
    if e.gcd != 1 {
        return Err(K3Error::GcdViolation { h, k });
    }
    // e.x·h + e.y·k = 1, so B = e.x, A = −e.y; shift by (k, h) into 0 ≤ A < h
    let a = (-e.y).rem_euclid(h);
    let b = (1 + a * k) / h;
    debug_assert_eq!(b * h - a * k, 1);
    Ok((a, b))
}

/// Preimage of the Néron–Severi generator of the partner surface, with its
/// lattice-theoretic properties verified.
pub fn ns_generator(params: &SurfaceParams) -> Result<MukaiVector, K3Error> {
    let (a, b) = bezout(params.h, params.k)?;
    let gen = MukaiVector::new(
        b,
        -a,
        params.delta * (-params.h + a * params.k * params.h),
    );
    let u = fm_vector(params);
    let d = params.d;
    if mukai::pairing(&gen, &u, d) != 0 {
        return Err(K3Error::InternalInconsistency(
            "NS generator not orthogonal to u".into(),
        ));
    }
    if mukai::square(&gen, d) != 2 * params.delta {
        return Err(K3Error::InternalInconsistency(
            "NS generator square is not 2*Delta".into(),
        ));
    }
    // not a multiple of u, and primitive modulo u: no N > 1 divides gen + L·u
    if gen.r * u.c == gen.c * u.r && gen.r * u.s == gen.s * u.r && gen.c * u.s == gen.s * u.c {
        return Err(K3Error::InternalInconsistency(
            "NS generator proportional to u".into(),
        ));
    }
    for n in 2..=10i64 {
        for l in -10..=10i64 {
            let shifted = gen.add(&u.scale(l));
            if shifted.r % n == 0 && shifted.c % n == 0 && shifted.s % n == 0 {
                return Err(K3Error::InternalInconsistency(format!(
                    "NS generator divisible by {n} modulo u"
                )));
            }
        }
    }
    Ok(gen)
}

/// Torsion order of the Brauer obstruction: gcd(k, 2Δk²h, Δkh²), computed in
/// full and asserted equal to k.
pub fn twist_order(params: &SurfaceParams) -> i64 {
    let (delta, h, k) = (params.delta, params.h, params.k);
    let order = k.gcd(&(2 * delta * k * k * h)).gcd(&(delta * k * h * h));
    assert_eq!(order, k, "twist order formula must reduce to k");
    order
}

/// Support class C = hH′ of the twisted Beauville–Mukai system; the s
/// component is deliberately symbolic.
pub fn bm_class(params: &SurfaceParams) -> (i64, UnresolvedS) {
    // C² = h²·2Δ must reproduce v² = 2Δh²
    let c_sq = params.h * params.h * 2 * params.delta;
    assert_eq!(c_sq, 2 * params.delta_h2());
    (params.h, UnresolvedS)
}

/// Full partner report for one parameter triple.
pub fn report(params: &SurfaceParams) -> Result<FmPartnerReport, K3Error> {
    let u = fm_vector(params);
    let bez = bezout(params.h, params.k)?;
    let gen = ns_generator(params)?;
    let (curve_coeff, s_marker) = bm_class(params);
    Ok(FmPartnerReport {
        u,
        partner_degree: 2 * params.delta,
        bezout: bez,
        ns_generator_vector: gen,
        twist_order: twist_order(params),
        bm_class_curve_coeff: curve_coeff,
        bm_class_s: s_marker,
    })
}
