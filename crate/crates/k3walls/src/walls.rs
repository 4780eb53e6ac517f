//! Enumeration of candidate wall vectors for v = (1, 0, −Δh²).
//!
//! The main search runs over the (a, w², j) grid extracted from the
//! seven-case bound analysis, derives (b, c) by a perfect-square test, and
//! applies the Γ-window, tilt and hyperbolicity filters. A brute-force
//! triple loop over (a, b, c) acts as an independent completeness oracle.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::K3Error;
use crate::mukai::{self, MukaiVector};
use crate::surface::{Rational, SurfaceParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Branch {
    Spherical,
    PositivePair,
}

/// A primitive Mukai vector passing all the numerical wall filters, with its
/// exact Γ and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WallCandidate {
    pub w: MukaiVector,
    pub branch: Branch,
    /// (w, v)
    pub j: i64,
    /// w²
    pub wsq: i64,
    /// h·a + k·b
    pub i: i64,
    pub gamma: Rational,
}

/// Reading of the positive-pair lower bound 2w² + 1 ≤ (w, v): the inequality
/// is implemented verbatim on w² by default; the half-square reading puts the
/// coefficient on w²/2 instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PositiveJLower {
    #[default]
    FullSquare,
    HalfSquare,
}

impl PositiveJLower {
    fn lower(&self, wsq: i64) -> i64 {
        match self {
            PositiveJLower::FullSquare => 2 * wsq + 1,
            PositiveJLower::HalfSquare => wsq + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchConfig {
    pub positive_j_lower: PositiveJLower,
}

/// Search bounds for the (a, w², j) grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub a_max: i64,
    pub wsq_values: Vec<i64>,
    /// closed interval for (w, v) on the spherical branch
    pub spherical_j: (i64, i64),
}

/// a_max = max(1, Δ(h−1)² + 1, ⌊Δh²/4⌋ + 1); w² ∈ {−2} ∪ {0, 2, …} below
/// Δh²/2.
pub fn search_box(params: &SurfaceParams) -> SearchBox {
    let dh2 = params.delta_h2();
    let a_max = 1
        .max(params.delta * (params.h - 1) * (params.h - 1) + 1)
        .max(dh2 / 4 + 1);
    let mut wsq_values = vec![-2];
    let mut wsq = 0;
    while 2 * wsq < dh2 {
        wsq_values.push(wsq);
        wsq += 2;
    }
    SearchBox {
        a_max,
        wsq_values,
        spherical_j: (-dh2, dh2),
    }
}

/// Γ = −2Δk²b / (2Δh²a − j) in lowest terms; errors when the denominator
/// vanishes (the ray would be vertical, outside the movable cone).
pub fn gamma(w: &MukaiVector, params: &SurfaceParams) -> Result<Rational, K3Error> {
    let dh2 = params.delta_h2() as i128;
    let dk2 = params.delta_k2() as i128;
    let (a, b, c) = (w.r as i128, w.c as i128, w.s as i128);
    let den = dh2 * a + c; // = 2Δh²a − j
    if den == 0 {
        return Err(K3Error::VerticalWall);
    }
    Ok(Rational::new(-2 * dk2 * b, den))
}

/// Lemma window 2k²/(h² + k² + 1) ≤ Γ < k/h, lower bound inclusive.
pub fn lemma31_filter(gamma: &Rational, params: &SurfaceParams) -> bool {
    let (h, k) = (params.h as i128, params.k as i128);
    let lower = Rational::new(2 * k * k, h * h + k * k + 1);
    let upper = Rational::new(k, h);
    *gamma >= lower && *gamma < upper
}

/// Tilt inequalities b·Γ + a ≥ 0 and −b·Γ + (1 − a) ≥ 0, denominator-cleared.
pub fn tilt_admissible(w: &MukaiVector, gamma: &Rational) -> bool {
    assert!(gamma.is_positive());
    let a = Rational::from_integer(w.r as i128);
    let b = Rational::from_integer(w.c as i128);
    let first = b.clone() * gamma.clone() + a.clone();
    let second = -(b * gamma.clone()) + (Rational::from_integer(1) - a);
    !first.is_negative() && !second.is_negative()
}

/// Full filter chain on a raw vector; returns the canonical candidate when
/// every condition holds. The branch is read off from w², so the enumeration
/// and the brute-force oracle share one admission path.
fn check_candidate(
    w: &MukaiVector,
    params: &SurfaceParams,
    cfg: &SearchConfig,
) -> Option<WallCandidate> {
    let (a, b) = (w.r, w.c);
    if b == 0 || a.checked_mul(b)? > 0 {
        return None;
    }
    let d = params.d;
    let dh2 = params.delta_h2();
    let v = params.v;

    let g = gamma(w, params).ok()?;
    if !g.is_positive() {
        return None;
    }
    if !w.is_primitive() {
        return None;
    }
    if !lemma31_filter(&g, params) || !tilt_admissible(w, &g) {
        return None;
    }
    if mukai::gram_determinant(&v, w, d) >= 0 {
        return None;
    }

    let wsq = mukai::square(w, d);
    let j = mukai::pairing(w, &v, d);
    let branch = if wsq == -2 {
        if j < -dh2 || j > dh2 {
            return None;
        }
        Branch::Spherical
    } else {
        if wsq < 0 || 2 * wsq >= dh2 {
            return None;
        }
        if j < cfg.positive_j_lower.lower(wsq) || j > dh2 {
            return None;
        }
        // The decomposition certificate may live on either sign of the
        // search representative: v = w + (v − w) or v = (−w) + (v + w).
        let direct = mukai::is_positive_class(w, d) && mukai::is_positive_class(&v.sub(w), d);
        let flipped =
            mukai::is_positive_class(&w.neg(), d) && mukai::is_positive_class(&v.add(w), d);
        if !direct && !flipped {
            return None;
        }
        Branch::PositivePair
    };

    // Canonical representative of a spherical ±pair: report the sign with
    // j ≥ 0.
    let (w, j) = if branch == Branch::Spherical && j < 0 {
        (w.neg(), -j)
    } else {
        (*w, j)
    };

    Some(WallCandidate {
        i: params.h * w.r + params.k * w.c,
        w,
        branch,
        j,
        wsq,
        gamma: g,
    })
}

fn finish(set: BTreeSet<WallCandidate>) -> Vec<WallCandidate> {
    let mut out: Vec<WallCandidate> = set.into_iter().collect();
    out.sort_by(|x, y| x.gamma.cmp(&y.gamma).then(x.w.cmp(&y.w)));
    out
}

/// All candidate wall vectors, sorted by Γ ascending with lexicographic
/// tiebreak on w.
pub fn enumerate_candidates(params: &SurfaceParams, cfg: &SearchConfig) -> Vec<WallCandidate> {
    let sb = search_box(params);
    let dh2 = params.delta_h2();
    let dk2 = params.delta_k2();
    let mut found = BTreeSet::new();

    let try_cell = |a: i64, wsq: i64, j: i64, found: &mut BTreeSet<WallCandidate>| {
        let c = dh2 * a - j;
        // Δk²b² = w²/2 + a·c fixes b up to sign
        let rhs = wsq / 2 + a * c;
        if rhs <= 0 || rhs % dk2 != 0 {
            return;
        }
        let Some(b0) = mukai::exact_sqrt((rhs / dk2) as i128) else {
            return;
        };
        for b in [b0 as i64, -(b0 as i64)] {
            if let Some(cand) = check_candidate(&MukaiVector::new(a, b, c), params, cfg) {
                found.insert(cand);
            }
        }
    };

    for a in -sb.a_max..=sb.a_max {
        for j in sb.spherical_j.0..=sb.spherical_j.1 {
            try_cell(a, -2, j, &mut found);
        }
        for &wsq in &sb.wsq_values {
            if wsq < 0 {
                continue;
            }
            for j in cfg.positive_j_lower.lower(wsq)..=dh2 {
                try_cell(a, wsq, j, &mut found);
            }
        }
    }
    finish(found)
}

/// Exhaustive triple loop over (a, b, c) applying the same filters directly.
/// Independent of the (a, w², j) parametrization of the main search.
pub fn brute_force_oracle(
    params: &SurfaceParams,
    scale: i64,
    cfg: &SearchConfig,
) -> Vec<WallCandidate> {
    assert!(scale >= 1);
    let sb = search_box(params);
    let dh2 = params.delta_h2();
    let (delta, h, k) = (params.delta as i128, params.h as i128, params.k as i128);
    // B = ⌈(Δh·max((h−1)², h²/4) + 2h)/k⌉
    let hm1 = Rational::from_integer((h - 1) * (h - 1));
    let quarter = Rational::new(h * h, 4);
    let top = Rational::from_integer(delta * h) * hm1.max(quarter)
        + Rational::from_integer(2 * h);
    let b_base = (top / Rational::from_integer(k)).ceil().to_integer() as i64;

    let a_bound = scale * sb.a_max;
    let b_bound = scale * b_base.max(1);
    let mut found = BTreeSet::new();
    for a in -a_bound..=a_bound {
        for b in -b_bound..=b_bound {
            for c in (dh2 * a - dh2)..=(dh2 * a + dh2) {
                if let Some(cand) = check_candidate(&MukaiVector::new(a, b, c), params, cfg) {
                    found.insert(cand);
                }
            }
        }
    }
    finish(found)
}
