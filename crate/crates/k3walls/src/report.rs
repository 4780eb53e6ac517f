//! Structured output: the analysis document emitted by the CLI, scan tables,
//! and their JSON/CSV/human renderings. Rationals are serialized as exact
//! "numerator/denominator" strings, never decimals.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{self, ChamberReport, Wall};
use crate::fmpartner;
use crate::mukai::MukaiVector;
use crate::surface::{NsRay, Rational, SurfaceParams};
use crate::walls::SearchConfig;

pub const SCHEMA_VERSION: &str = "1";

pub fn rational_str(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn vec3(w: &MukaiVector) -> [i64; 3] {
    [w.r, w.c, w.s]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub delta: i64,
    pub h: i64,
    pub k: i64,
    pub d: i64,
    pub n: i64,
    /// H² as given on the command line, = 2d
    pub degree: i64,
    /// number of points, = N + 1
    pub points: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemicircleDoc {
    pub center: String,
    pub radius_sq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDoc {
    pub gamma: String,
    pub vectors: Vec<[i64; 3]>,
    pub kind: String,
    pub certificate: Option<[i64; 3]>,
    pub semicircle: SemicircleDoc,
    pub y0_sq: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmPartnerDoc {
    pub u: [i64; 3],
    pub partner_degree: i64,
    pub bezout: [i64; 2],
    pub ns_generator: [i64; 3],
    pub twist_order: i64,
    pub bm_class_curve_coeff: i64,
    pub bm_class_s: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzObstruction {
    pub nd: i64,
    pub square_free_part: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema_version: String,
    pub input: InputEcho,
    pub syz: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syz_obstruction: Option<SyzObstruction>,
    pub movable_cone: Vec<[i64; 2]>,
    pub bound_k: String,
    pub walls: Vec<WallDoc>,
    pub chamber_count: i64,
    pub chamber_count_by_vectors: i64,
    pub lagrangian_unique: bool,
    pub faults: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fm_partner: Option<FmPartnerDoc>,
}

fn wall_doc(wall: &Wall) -> WallDoc {
    WallDoc {
        gamma: rational_str(&wall.gamma),
        vectors: wall.representatives.iter().map(|r| vec3(&r.w)).collect(),
        kind: wall.kind.to_string(),
        certificate: wall.certificate.as_ref().map(vec3),
        semicircle: SemicircleDoc {
            center: rational_str(&wall.semicircle.0),
            radius_sq: rational_str(&wall.semicircle.1),
        },
        y0_sq: rational_str(&wall.y0_sq),
    }
}

fn input_echo(params: &SurfaceParams) -> InputEcho {
    InputEcho {
        delta: params.delta,
        h: params.h,
        k: params.k,
        d: params.d,
        n: params.n,
        degree: 2 * params.d,
        points: params.n + 1,
    }
}

fn ray_pair(ray: &NsRay) -> [i64; 2] {
    [ray.coeff_htilde, ray.coeff_b]
}

pub fn fm_partner_doc(params: &SurfaceParams) -> FmPartnerDoc {
    let rep = fmpartner::report(params).expect("partner data is total on valid params");
    FmPartnerDoc {
        u: vec3(&rep.u),
        partner_degree: rep.partner_degree,
        bezout: [rep.bezout.0, rep.bezout.1],
        ns_generator: vec3(&rep.ns_generator_vector),
        twist_order: rep.twist_order,
        bm_class_curve_coeff: rep.bm_class_curve_coeff,
        bm_class_s: rep.bm_class_s.to_string(),
    }
}

/// Full §3–§5 pipeline document for valid parameters.
pub fn analysis_document(params: &SurfaceParams, cfg: &SearchConfig) -> AnalysisDocument {
    let report = classify::chamber_report(params, cfg);
    let (ray0, ray1) = crate::surface::movable_cone(params);
    AnalysisDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        input: input_echo(params),
        syz: true,
        syz_obstruction: None,
        movable_cone: vec![ray_pair(&ray0), ray_pair(&ray1)],
        bound_k: rational_str(&report.bound_k),
        walls: report.walls.iter().map(wall_doc).collect(),
        chamber_count: report.chamber_count,
        chamber_count_by_vectors: report.chamber_count_by_vectors,
        lagrangian_unique: report.lagrangian_unique,
        faults: report.faults.clone(),
        fm_partner: Some(fm_partner_doc(params)),
    }
}

/// Document for inputs failing the SYZ square condition.
pub fn syz_failure_document(d: i64, n: i64, nd: i64, square_free_part: i64) -> AnalysisDocument {
    AnalysisDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        input: InputEcho {
            delta: 0,
            h: 0,
            k: 0,
            d,
            n,
            degree: 2 * d,
            points: n + 1,
        },
        syz: false,
        syz_obstruction: Some(SyzObstruction {
            nd,
            square_free_part,
        }),
        movable_cone: Vec::new(),
        bound_k: String::new(),
        walls: Vec::new(),
        chamber_count: 0,
        chamber_count_by_vectors: 0,
        lagrangian_unique: false,
        faults: Vec::new(),
        fm_partner: None,
    }
}

fn fmt_vectors(vectors: &[[i64; 3]]) -> String {
    vectors
        .iter()
        .map(|v| format!("({},{},{})", v[0], v[1], v[2]))
        .collect::<Vec<_>>()
        .join(";")
}

/// Human-readable rendering with the usual symbols (Γ, w, j) in headers.
pub fn render_human(doc: &AnalysisDocument) -> String {
    let mut out = String::new();
    if !doc.syz {
        let obs = doc.syz_obstruction.as_ref().unwrap();
        out.push_str(&format!(
            "SYZ failure: N*d = {} is not a perfect square (square-free part {})\n",
            obs.nd, obs.square_free_part
        ));
        out.push_str(&format!(
            "input: degree {} (d = {}), {} points (N = {})\n",
            doc.input.degree, doc.input.d, doc.input.points, doc.input.n
        ));
        return out;
    }
    let i = &doc.input;
    out.push_str(&format!(
        "surface: Delta = {}, h = {}, k = {} (H^2 = {}, {} points)\n",
        i.delta, i.h, i.k, i.degree, i.points
    ));
    out.push_str(&format!(
        "movable cone: <H~, {}H~ - {}B>, wall-free k bound {}\n",
        doc.movable_cone[1][0], -doc.movable_cone[1][1], doc.bound_k
    ));
    if doc.walls.is_empty() {
        out.push_str("walls: none\n");
    } else {
        out.push_str("walls (Gamma ascending):\n");
        out.push_str("  Gamma      kind        w vectors                  certificate\n");
        for w in &doc.walls {
            let cert = w
                .certificate
                .map(|c| format!("({},{},{})", c[0], c[1], c[2]))
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "  {:<10} {:<11} {:<26} {}\n",
                w.gamma,
                w.kind,
                fmt_vectors(&w.vectors),
                cert
            ));
        }
    }
    out.push_str(&format!(
        "chambers: {} (distinct Gamma), {} (vectors as walls); Lagrangian fibration unique: {}\n",
        doc.chamber_count, doc.chamber_count_by_vectors, doc.lagrangian_unique
    ));
    for fault in &doc.faults {
        out.push_str(&format!("FAULT: {fault}\n"));
    }
    if let Some(fm) = &doc.fm_partner {
        out.push_str(&format!(
            "FM partner: u = ({},{},{}), degree {}, Bezout (A,B) = ({},{}), NS generator ({},{},{}), twist order {}, C = {}H', s = {}\n",
            fm.u[0], fm.u[1], fm.u[2],
            fm.partner_degree,
            fm.bezout[0], fm.bezout[1],
            fm.ns_generator[0], fm.ns_generator[1], fm.ns_generator[2],
            fm.twist_order,
            fm.bm_class_curve_coeff,
            fm.bm_class_s,
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub k: i64,
    pub walls: i64,
    pub distinct_gamma: i64,
    pub chambers: i64,
    pub vectors: Vec<[i64; 3]>,
}

/// One row per admissible k ≤ k_max; rows are computed in parallel and
/// reassembled in k order.
pub fn scan(delta: i64, h: i64, k_max: i64, cfg: &SearchConfig) -> Vec<ScanRow> {
    let ks: Vec<i64> = (1..=k_max).filter(|k| h.gcd(k) == 1).collect();
    ks.par_iter()
        .map(|&k| {
            let params = crate::surface::from_triple(delta, h, k).expect("gcd filtered");
            let report: ChamberReport = classify::chamber_report(&params, cfg);
            let vectors: Vec<[i64; 3]> = report
                .walls
                .iter()
                .flat_map(|w| w.representatives.iter().map(|r| vec3(&r.w)))
                .collect();
            ScanRow {
                k,
                walls: vectors.len() as i64,
                distinct_gamma: report.walls.len() as i64,
                chambers: report.chamber_count,
                vectors,
            }
        })
        .collect()
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("k,walls,distinct_gamma,chambers,vectors\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},\"{}\"\n",
            row.k,
            row.walls,
            row.distinct_gamma,
            row.chambers,
            fmt_vectors(&row.vectors)
        ));
    }
    out
}

pub fn scan_human(rows: &[ScanRow]) -> String {
    let mut out = String::from("k    walls  distinct Gamma  chambers  w vectors\n");
    for row in rows {
        out.push_str(&format!(
            "{:<4} {:<6} {:<15} {:<9} {}\n",
            row.k,
            row.walls,
            row.distinct_gamma,
            row.chambers,
            fmt_vectors(&row.vectors)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::from_triple;

    #[test]
    fn json_round_trip() {
        let params = from_triple(1, 3, 2).unwrap();
        let doc = analysis_document(&params, &SearchConfig::default());
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: AnalysisDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        assert!(!json.contains('.'), "rationals must not be serialized as decimals");
    }

    #[test]
    fn document_h2_k3() {
        let params = from_triple(1, 2, 3).unwrap();
        let doc = analysis_document(&params, &SearchConfig::default());
        assert_eq!(doc.schema_version, "1");
        assert_eq!(doc.walls.len(), 1);
        assert_eq!(doc.walls[0].gamma, "18/13");
        assert_eq!(doc.chamber_count, 2);
        assert!(doc.syz);
    }

    #[test]
    fn scan_rows_h2() {
        let rows = scan(1, 2, 9, &SearchConfig::default());
        let wall_ks: Vec<i64> = rows.iter().filter(|r| r.walls > 0).map(|r| r.k).collect();
        assert_eq!(wall_ks, vec![1, 3]);
        let csv = scan_csv(&rows);
        assert!(csv.starts_with("k,walls,distinct_gamma,chambers,vectors\n"));
    }

    #[test]
    fn scan_deterministic() {
        let a = scan(1, 3, 8, &SearchConfig::default());
        let b = scan(1, 3, 8, &SearchConfig::default());
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
