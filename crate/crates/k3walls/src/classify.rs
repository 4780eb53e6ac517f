//! Grouping of candidates into walls, the flopping/divisorial/fake verdict,
//! chamber counting, the xy-plane geometry and the SVG rendering.

use num_traits::{Signed, Zero};

use crate::error::K3Error;
use crate::mukai::{self, MukaiVector};
use crate::surface::{self, Rational, SurfaceParams};
use crate::walls::{Branch, SearchConfig, WallCandidate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallKind {
    Flopping,
    Divisorial,
    Fake,
}

impl std::fmt::Display for WallKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            WallKind::Flopping => "flopping",
            WallKind::Divisorial => "divisorial",
            WallKind::Fake => "fake",
        };
        f.write_str(s)
    }
}

/// One wall: an equivalence class of candidates sharing a Γ, i.e. one ray
/// H̃ − ΓB.
#[derive(Debug, Clone)]
pub struct Wall {
    pub gamma: Rational,
    pub representatives: Vec<WallCandidate>,
    /// whether each representative shares a rank-2 lattice with v and the
    /// first representative w₀ (either may generate the finer lattice)
    pub in_first_lattice: Vec<bool>,
    pub kind: WallKind,
    pub certificate: Option<MukaiVector>,
    /// (center, radius²) of the xy-plane semicircle
    pub semicircle: (Rational, Rational),
    /// intersection with the line x = −1; negative means no intersection
    pub y0_sq: Rational,
}

/// Z_{x,y} value stored as (Re, Im/y) so everything stays rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralChargeValue {
    pub re: Rational,
    pub im_over_y: Rational,
}

#[derive(Debug, Clone)]
pub struct ChamberReport {
    pub params: SurfaceParams,
    pub walls: Vec<Wall>,
    /// 1 + number of flopping walls (distinct Γ)
    pub chamber_count: i64,
    /// 1 + number of flopping wall vectors (each candidate counted)
    pub chamber_count_by_vectors: i64,
    pub lagrangian_unique: bool,
    pub bound_k: Rational,
    /// consistency faults: interior divisorial walls, fake verdicts
    pub faults: Vec<String>,
}

/// Semicircle (x + 1/Γ)² + y² = 1/Γ² − h²/k² as (center, radius²).
pub fn semicircle(gamma: &Rational, params: &SurfaceParams) -> Result<(Rational, Rational), K3Error> {
    assert!(gamma.is_positive());
    let (h, k) = (params.h as i128, params.k as i128);
    if *gamma >= Rational::new(k, h) {
        return Err(K3Error::DegenerateRadius);
    }
    let inv = gamma.recip();
    let center = -inv.clone();
    let radius_sq = inv.clone() * inv - Rational::new(h * h, k * k);
    Ok((center, radius_sq))
}

/// y₀² = 2/Γ − (h² + k²)/k², the (squared) height where the semicircle meets
/// the line x = −1. Negative values mean no intersection.
pub fn y0_squared(gamma: &Rational, params: &SurfaceParams) -> Rational {
    assert!(gamma.is_positive());
    let (h, k) = (params.h as i128, params.k as i128);
    Rational::from_integer(2) / gamma.clone() - Rational::new(h * h + k * k, k * k)
}

/// Z_{xH,yH}(w) with y² rational: Re = 2d·b·x − r·d·(x² − y²) − s,
/// Im/y = 2d·b − 2d·r·x, where d = Δk².
pub fn central_charge(
    w: &MukaiVector,
    x: &Rational,
    y_sq: &Rational,
    params: &SurfaceParams,
) -> CentralChargeValue {
    let d = Rational::from_integer(params.d as i128);
    let r = Rational::from_integer(w.r as i128);
    let b = Rational::from_integer(w.c as i128);
    let s = Rational::from_integer(w.s as i128);
    let two_d = d.clone() * Rational::from_integer(2);
    let re = two_d.clone() * b.clone() * x.clone()
        - r.clone() * d * (x.clone() * x.clone() - y_sq.clone())
        - s;
    let im_over_y = two_d.clone() * b - two_d * r * x.clone();
    CentralChargeValue { re, im_over_y }
}

/// Same-argument test for two central charges, exact over rationals (the
/// common positive factor y cancels in the cross product).
pub fn aligned(
    w1: &MukaiVector,
    w2: &MukaiVector,
    x: &Rational,
    y_sq: &Rational,
    params: &SurfaceParams,
) -> bool {
    let z1 = central_charge(w1, x, y_sq, params);
    let z2 = central_charge(w2, x, y_sq, params);
    (z1.re * z2.im_over_y - z2.re * z1.im_over_y).is_zero()
}

/// Partition candidates by exact Γ equality; one wall per distinct Γ. The
/// verdict is left unset (Fake, no certificate) until `classify_wall` runs.
pub fn group_into_walls(candidates: &[WallCandidate], params: &SurfaceParams) -> Vec<Wall> {
    let mut walls: Vec<Wall> = Vec::new();
    for cand in candidates {
        if let Some(wall) = walls.last_mut() {
            if wall.gamma == cand.gamma {
                wall.representatives.push(cand.clone());
                continue;
            }
        }
        let (center, radius_sq) =
            semicircle(&cand.gamma, params).expect("candidate Γ is below k/h");
        walls.push(Wall {
            gamma: cand.gamma.clone(),
            representatives: vec![cand.clone()],
            in_first_lattice: Vec::new(),
            kind: WallKind::Fake,
            certificate: None,
            semicircle: (center, radius_sq),
            y0_sq: y0_squared(&cand.gamma, params),
        });
    }
    for wall in &mut walls {
        let w0 = wall.representatives[0].w;
        wall.in_first_lattice = wall
            .representatives
            .iter()
            .map(|r| {
                let fwd = mukai::membership_in_lattice(&r.w, &params.v, &w0)
                    .map(|m| m.is_some())
                    .unwrap_or(false);
                // the other representative may generate the finer lattice,
                // e.g. (−1,2,−17) = v − 2·(1,−1,4)
                let rev = mukai::membership_in_lattice(&w0, &params.v, &r.w)
                    .map(|m| m.is_some())
                    .unwrap_or(false);
                fwd || rev
            })
            .collect();
    }
    walls
}

/// Numerical wall dictionary on ℤv + ℤw₀: divisorial witnesses first
/// (spherical ⊥ v, then isotropic with pairing ±1, ±2), then flopping
/// witnesses (spherical with 0 < |pairing| ≤ Δh², then a positive-pair
/// decomposition), else fake.
pub fn classify_wall(wall: &Wall, params: &SurfaceParams) -> (WallKind, Option<MukaiVector>) {
    let v = params.v;
    let w0 = wall.representatives[0].w;
    let d = params.d;
    let dh2 = params.delta_h2();

    let solve = |target: i64, p: i64| -> Vec<MukaiVector> {
        mukai::solve_in_rank2(&v, &w0, target, p, d).expect("wall pair is hyperbolic")
    };

    if let Some(s) = solve(-2, 0).first() {
        return (WallKind::Divisorial, Some(*s));
    }
    for p in [1, -1, 2, -2] {
        if let Some(u) = solve(0, p).first() {
            return (WallKind::Divisorial, Some(*u));
        }
    }
    for ap in 1..=dh2 {
        for p in [ap, -ap] {
            if let Some(s) = solve(-2, p).first() {
                return (WallKind::Flopping, Some(*s));
            }
        }
    }
    if let Some(rep) = wall
        .representatives
        .iter()
        .find(|r| r.branch == Branch::PositivePair)
    {
        return (WallKind::Flopping, Some(rep.w));
    }
    (WallKind::Fake, None)
}

/// Run the full pipeline for one parameter triple.
pub fn chamber_report(params: &SurfaceParams, cfg: &SearchConfig) -> ChamberReport {
    let candidates = crate::walls::enumerate_candidates(params, cfg);
    let mut walls = group_into_walls(&candidates, params);
    let mut faults = Vec::new();
    for wall in &mut walls {
        let (kind, cert) = classify_wall(wall, params);
        wall.kind = kind;
        wall.certificate = cert;
        match kind {
            WallKind::Divisorial => faults.push(format!(
                "interior wall at gamma {} classified divisorial",
                wall.gamma
            )),
            WallKind::Fake => faults.push(format!(
                "wall at gamma {} classified fake (totally semistable)",
                wall.gamma
            )),
            WallKind::Flopping => {}
        }
    }
    let flopping: Vec<&Wall> = walls.iter().filter(|w| w.kind == WallKind::Flopping).collect();
    let chamber_count = 1 + flopping.len() as i64;
    let chamber_count_by_vectors = 1 + flopping
        .iter()
        .map(|w| w.representatives.len() as i64)
        .sum::<i64>();
    ChamberReport {
        params: *params,
        walls,
        chamber_count,
        chamber_count_by_vectors,
        lagrangian_unique: chamber_count == 1,
        bound_k: surface::sufficient_k_bound(params.delta, params.h),
        faults,
    }
}

/// Scan k upward and find the first k from which the movable cone stays a
/// single chamber: k₀ is the smallest admissible k past every wall-bearing
/// one. Returns the per-k wall-vector counts up to the guaranteed horizon.
pub fn minimal_clear_k(
    delta: i64,
    h: i64,
    cfg: &SearchConfig,
) -> (i64, Vec<(i64, i64)>) {
    use num_integer::Integer;
    let horizon = surface::sufficient_k_bound(delta, h).ceil().to_integer() as i64;
    let mut per_k = Vec::new();
    let mut last_wall_k = 0;
    for k in 1..=horizon.max(1) {
        if h.gcd(&k) != 1 {
            continue;
        }
        let params = surface::from_triple(delta, h, k).expect("gcd checked");
        let count = crate::walls::enumerate_candidates(&params, cfg).len() as i64;
        if count > 0 {
            last_wall_k = k;
        }
        per_k.push((k, count));
    }
    let mut k0 = last_wall_k + 1;
    while h.gcd(&k0) != 1 {
        k0 += 1;
    }
    (k0.max(1), per_k)
}

// ---------------------------------------------------------------------------
// SVG rendering of the xy-plane picture

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 400.0;
const X_MIN: Rational = Rational::new_raw(-4, 1);
const X_MAX: Rational = Rational::new_raw(1, 1);
const Y_MAX: Rational = Rational::new_raw(5, 2);

/// Render a rational to exactly 6 decimal places, round-half-away-from-zero.
fn fmt6(q: &Rational) -> String {
    let scaled = q * Rational::from_integer(1_000_000);
    let num = *scaled.numer();
    let den = *scaled.denom();
    let half = if num >= 0 { den / 2 } else { -(den / 2) };
    let rounded = (num + half) / den;
    let sign = if rounded < 0 { "-" } else { "" };
    let abs = rounded.abs();
    format!("{}{}.{:06}", sign, abs / 1_000_000, abs % 1_000_000)
}

/// floor(10^6·√q), pure integer arithmetic.
fn sqrt_scaled(q: &Rational) -> i128 {
    assert!(!q.is_negative());
    // floor(10^6·√(n/d)) = isqrt(10^12·n·d) / d
    let n = *q.numer();
    let d = *q.denom();
    let scaled = n
        .checked_mul(d)
        .and_then(|nd| nd.checked_mul(1_000_000_000_000))
        .expect("sqrt_scaled overflow");
    isqrt(scaled) / d
}

/// Render an integer scaled by 10^6 as a fixed 6-decimal string.
fn fmt_scaled(v: i128) -> String {
    let sign = if v < 0 { "-" } else { "" };
    let a = v.abs();
    format!("{}{}.{:06}", sign, a / 1_000_000, a % 1_000_000)
}

/// round(10^6·q).
fn round_scaled(q: &Rational) -> i128 {
    let scaled = q * Rational::from_integer(1_000_000);
    let num = *scaled.numer();
    let den = *scaled.denom();
    let half = if num >= 0 { den / 2 } else { -(den / 2) };
    (num + half) / den
}

fn isqrt(n: i128) -> i128 {
    let mut lo: i128 = 0;
    let mut hi: i128 = 1;
    while hi * hi <= n {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if mid * mid <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn sx(q: &Rational) -> String {
    // 160 px per world unit, origin at x = −4
    fmt6(&((q - X_MIN) * Rational::from_integer(160)))
}

fn sy(q: &Rational) -> String {
    fmt6(&((Y_MAX - q) * Rational::from_integer(160)))
}

/// Deterministic SVG of the upper half plane: the line x = −1, the stability
/// threshold y = 1/k, and one labeled semicircle per wall.
pub fn svg_plot(params: &SurfaceParams, walls: &[Wall]) -> String {
    let zero = Rational::zero();
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        SVG_W as i64, SVG_H as i64, SVG_W as i64, SVG_H as i64
    ));
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        sx(&X_MIN),
        sy(&zero),
        sx(&X_MAX),
        sy(&zero)
    ));
    let x_axis0 = Rational::zero();
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        sx(&x_axis0),
        sy(&zero),
        sx(&x_axis0),
        sy(&Y_MAX)
    ));
    let minus_one = Rational::from_integer(-1);
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"blue\" stroke-dasharray=\"4 2\"/>\n",
        sx(&minus_one),
        sy(&zero),
        sx(&minus_one),
        sy(&Y_MAX)
    ));
    // stability threshold y = 1/k
    let threshold = Rational::new(1, params.k as i128);
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"green\" stroke-dasharray=\"2 2\"/>\n",
        sx(&X_MIN),
        sy(&threshold),
        sx(&X_MAX),
        sy(&threshold)
    ));
    for wall in walls {
        let (center, radius_sq) = &wall.semicircle;
        // all values scaled by 10^6; 160 px per world unit
        let rpx = 160 * sqrt_scaled(radius_sq);
        let cx = round_scaled(&((center - X_MIN) * Rational::from_integer(160)));
        let baseline = sy(&zero);
        out.push_str(&format!(
            "  <path d=\"M {} {} A {} {} 0 0 1 {} {}\" fill=\"none\" stroke=\"red\"/>\n",
            fmt_scaled(cx - rpx),
            baseline,
            fmt_scaled(rpx),
            fmt_scaled(rpx),
            fmt_scaled(cx + rpx),
            baseline
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\">{}/{}</text>\n",
            fmt_scaled(cx),
            baseline,
            wall.gamma.numer(),
            wall.gamma.denom()
        ));
    }
    out.push_str("</svg>\n");
    out
}
