//! Running checks on a fixture and collecting the verdicts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat, Rational};
use crate::connection::{christoffel, numeric_geodesic_residual, reeb_geodesy};
use crate::exterior::MetricField;
use crate::fixture::Model;
use crate::metric::{
    are_foliations_orthogonal, build_associated_by_polarization, build_compatible, compatible_corollaries, is_associated, is_compatible, killing_check,
    verify_restricted_contact_metric, MetricContactPair, RestrictionMode,
};
use crate::pair::{verify_contact_pair, verify_splittings, VerifiedPair};
use crate::structure::{is_decomposable, verify_induced_almost_contact, verify_structure, ContactPairStructure};
use crate::verdict::{Status, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    VerifyPair,
    Reeb,
    VerifyStructure,
    Decomposable,
    Compatible,
    Associated,
    Orthogonal,
    BuildCompatible,
    Polarize,
    Geodesy,
    Killing,
    Leaves,
    Theorems,
    Report,
}

const VERBS: &[(&str, Verb)] = &[
    ("verify-pair", Verb::VerifyPair),
    ("reeb", Verb::Reeb),
    ("verify-structure", Verb::VerifyStructure),
    ("decomposable", Verb::Decomposable),
    ("compatible", Verb::Compatible),
    ("associated", Verb::Associated),
    ("orthogonal", Verb::Orthogonal),
    ("build-compatible", Verb::BuildCompatible),
    ("polarize", Verb::Polarize),
    ("geodesy", Verb::Geodesy),
    ("killing", Verb::Killing),
    ("leaves", Verb::Leaves),
    ("theorems", Verb::Theorems),
    ("report", Verb::Report),
];

impl Verb {
    pub fn all() -> impl Iterator<Item = Verb> {
        VERBS.iter().map(|(_, v)| *v)
    }

    pub fn as_str(self) -> &'static str {
        VERBS.iter().find(|(_, v)| *v == self).map(|(s, _)| *s).expect("listed")
    }

    /// Check-name prefixes reported by this verb; `None` means all.
    fn prefixes(self) -> Option<&'static [&'static str]> {
        Some(match self {
            Verb::VerifyPair => &["pair."],
            Verb::Reeb => &["pair.", "reeb"],
            Verb::VerifyStructure => &["structure."],
            Verb::Decomposable => &["decomposable"],
            Verb::Compatible => &["compatible"],
            Verb::Associated => &["associated", "compatible"],
            Verb::Orthogonal => &["orthogonal"],
            Verb::BuildCompatible => &["build_compatible"],
            Verb::Polarize => &["polarize"],
            Verb::Geodesy => &["compatible", "connection", "geodesy"],
            Verb::Killing => &["associated", "killing"],
            Verb::Leaves => &["decomposable", "induced", "leaves"],
            Verb::Theorems | Verb::Report => return None,
        })
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verb {
    type Err = String;

    fn from_str(s: &str) -> Result<Verb, String> {
        VERBS.iter().find(|(n, _)| *n == s).map(|(_, v)| *v).ok_or_else(|| format!("unknown verb {s:?}"))
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Tolerance for numeric checks.
    pub tol: f64,
    /// Extra random sample points added to chart fixtures.
    pub samples: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tol: 1e-9, samples: 0, seed: 0, timings: false }
    }
}

/// Bound for the RK4 cross-check with `dt = 1e-3` on `[0, 1]`.
pub const RK4_BOUND: f64 = 1e-8;
const KILLING_FD_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub fixture: String,
    pub verb: String,
    pub verdicts: BTreeMap<String, Verdict>,
    pub residuals: BTreeMap<String, String>,
    pub skipped: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, String>>,
    pub versions: BTreeMap<String, String>,
}

impl Report {
    /// 0 all Verified, 2 some SampleVerified and none Failed, 1 any Failed
    /// or nothing applicable.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.is_empty() || self.verdicts.values().any(Verdict::is_failed) {
            1
        } else if self.verdicts.values().all(Verdict::is_verified) {
            0
        } else {
            2
        }
    }

    pub fn failed(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, v)| v.is_failed()).map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.verdicts {
            let status = match &v.status {
                Status::Verified => "Verified".to_string(),
                Status::SampleVerified { points } => format!("SampleVerified ({points} points)"),
                Status::Failed { witness } => format!("Failed: {witness}"),
            };
            out.push_str(&format!("{k}: {status}\n"));
        }
        for (k, why) in &self.skipped {
            out.push_str(&format!("{k}: skipped ({why})\n"));
        }
        out
    }
}

struct Collector {
    filter: Option<&'static [&'static str]>,
    verdicts: BTreeMap<String, Verdict>,
    residuals: BTreeMap<String, String>,
    skipped: BTreeMap<String, String>,
    timings: BTreeMap<String, String>,
    clock: Instant,
}

impl Collector {
    fn wants(&self, key: &str) -> bool {
        self.filter.is_none_or(|ps| ps.iter().any(|p| key.starts_with(p)))
    }

    fn any_wanted(&self, keys: &[&str]) -> bool {
        keys.iter().any(|k| self.wants(k))
    }

    fn put(&mut self, key: &str, v: Verdict) {
        if self.wants(key) {
            self.verdicts.insert(key.to_string(), v);
            self.timings.insert(key.to_string(), format!("{:.3}ms", self.clock.elapsed().as_secs_f64() * 1e3));
        }
    }

    fn residual(&mut self, key: &str, x: f64) {
        if self.wants(key) {
            self.residuals.insert(key.to_string(), format!("{x:.16e}"));
        }
    }

    fn skip(&mut self, keys: &[&str], why: &str) {
        for k in keys {
            if self.wants(k) {
                self.skipped.insert(k.to_string(), why.to_string());
            }
        }
    }
}

fn error_verdict(e: impl fmt::Display) -> Verdict {
    Verdict::failed(e.to_string(), "computation failed")
}

fn random_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..n).map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=4))).collect()).collect()
}

const STRUCTURE_KEYS: &[&str] = &["structure.eq1", "structure.eq2", "structure.alpha_phi", "structure.rank"];
const CPS_KEYS: &[&str] = &["decomposable", "build_compatible", "induced_almost_contact.tf1", "induced_almost_contact.tf2"];
const METRIC_KEYS: &[&str] = &["compatible", "compatible.corollaries", "associated", "associated.skew", "orthogonal"];
const GEODESY_KEYS: &[&str] = &[
    "connection.torsion_free",
    "connection.metric_compatible",
    "geodesy.gram",
    "geodesy.geodesic",
    "geodesy.totally_geodesic",
    "geodesy.rk4",
];
const MCP_KEYS: &[&str] = &[
    "killing.z1",
    "killing.z2",
    "equivalence",
    "leaves.contact_metric.tf1",
    "leaves.contact_metric.tf2",
    "leaves.mcp.ker_d_alpha1",
    "leaves.mcp.ker_d_alpha2",
];
const POLAR_KEYS: &[&str] = &["polarize", "polarize.decomposable", "polarize.plain", "polarize.equivalence", "polarize.killing"];

pub fn run(verb: Verb, model: &Model, opts: &RunOptions) -> Report {
    let mut c = Collector {
        filter: verb.prefixes(),
        verdicts: BTreeMap::new(),
        residuals: BTreeMap::new(),
        skipped: BTreeMap::new(),
        timings: BTreeMap::new(),
        clock: Instant::now(),
    };
    let mut pair = model.pair.clone();
    if opts.samples > 0 && model.space.is_chart() {
        pair = pair.with_sample_points(random_points(model.space.dim(), opts.samples, opts.seed));
    }
    let all_downstream: Vec<&str> = ["reeb", "splittings"]
        .iter()
        .chain(STRUCTURE_KEYS)
        .chain(CPS_KEYS)
        .chain(METRIC_KEYS)
        .chain(GEODESY_KEYS)
        .chain(MCP_KEYS)
        .chain(POLAR_KEYS)
        .copied()
        .collect();

    let ax = verify_contact_pair(&pair);
    let pair_failed = ax.any_failed();
    c.put("pair.volume", ax.volume);
    c.put("pair.d_alpha1_power", ax.d_alpha1_power);
    c.put("pair.d_alpha2_power", ax.d_alpha2_power);
    if pair_failed {
        c.skip(&all_downstream, "contact pair axioms fail");
        return finish(c, model, verb, opts);
    }
    let vp = match VerifiedPair::new(pair) {
        Ok(vp) => vp,
        Err(e) => {
            c.put("reeb", error_verdict(&e));
            c.skip(&all_downstream[1..], "Reeb fields or distributions unavailable");
            return finish(c, model, verb, opts);
        }
    };
    if c.wants("reeb") {
        let v = crate::pair::reeb_identities(vp.pair(), vp.z(1), vp.z(2)).unwrap_or_else(error_verdict);
        c.put("reeb", v);
    }
    if c.wants("splittings") {
        c.put("splittings", verify_splittings(&vp));
    }

    let downstream_of_phi: Vec<&str> = STRUCTURE_KEYS.iter().chain(CPS_KEYS).chain(METRIC_KEYS).chain(GEODESY_KEYS).chain(MCP_KEYS).copied().collect();
    let cps = match &model.phi {
        None => {
            c.skip(&downstream_of_phi, "fixture has no φ");
            None
        }
        Some(phi) => {
            let sv = verify_structure(&vp, phi);
            let ok = sv.eq1.passed() && sv.eq2.passed();
            c.put("structure.eq1", sv.eq1);
            c.put("structure.eq2", sv.eq2);
            c.put("structure.alpha_phi", sv.alpha_phi);
            c.put("structure.rank", sv.rank);
            if ok {
                ContactPairStructure::new(vp.clone(), phi.clone()).ok()
            } else {
                c.skip(&downstream_of_phi[STRUCTURE_KEYS.len()..], "φ is not a contact pair structure");
                None
            }
        }
    };

    if let Some(cps) = &cps {
        let decomposable = is_decomposable(cps);
        let is_dec = decomposable.passed();
        c.put("decomposable", decomposable.clone());
        if c.wants("build_compatible") {
            let h = model.aux_metric.clone().unwrap_or_else(|| MetricField::euclidean(cps.space()));
            let v = match build_compatible(cps, &h) {
                Ok(g) => Verdict::all("build_compatible output", &[is_compatible(cps, &g), compatible_corollaries(cps, &g)]),
                Err(e) => error_verdict(e),
            };
            c.put("build_compatible", v);
        }
        if is_dec {
            for (key, frame, i) in [("induced_almost_contact.tf2", vp.tf(2), 1), ("induced_almost_contact.tf1", vp.tf(1), 2)] {
                if c.wants(key) {
                    c.put(key, verify_induced_almost_contact(cps, frame, i).unwrap_or_else(error_verdict));
                }
            }
        } else {
            c.skip(&["induced_almost_contact.tf1", "induced_almost_contact.tf2"], "φ is not decomposable");
        }

        match &model.metric {
            None => {
                c.skip(METRIC_KEYS, "fixture has no metric");
                c.skip(GEODESY_KEYS, "fixture has no metric");
                c.skip(MCP_KEYS, "fixture has no metric");
            }
            Some(g) => run_metric_checks(&mut c, cps, g, &decomposable),
        }
    }

    match &model.aux_metric {
        None => c.skip(POLAR_KEYS, "fixture has no auxiliary metric"),
        Some(k) if c.any_wanted(POLAR_KEYS) => run_polarization(&mut c, &vp, k, opts.tol),
        Some(_) => {}
    }
    finish(c, model, verb, opts)
}

fn run_metric_checks(c: &mut Collector, cps: &ContactPairStructure, g: &MetricField, decomposable: &Verdict) {
    let vp = cps.vp();
    let compatible = is_compatible(cps, g);
    let compat_ok = compatible.passed();
    c.put("compatible", compatible);
    if compat_ok {
        c.put("compatible.corollaries", compatible_corollaries(cps, g));
    } else {
        c.skip(&["compatible.corollaries"], "metric is not compatible");
    }
    let assoc = is_associated(cps, g);
    let assoc_ok = assoc.passed();
    c.put("associated", assoc.verdict.clone());
    if assoc_ok {
        c.put("associated.skew", assoc.skew.clone());
    } else {
        c.skip(&["associated.skew"], "metric is not associated");
    }
    let orth = are_foliations_orthogonal(vp, g);
    c.put("orthogonal", orth.clone());

    if compat_ok && c.any_wanted(GEODESY_KEYS) {
        match christoffel(g) {
            Ok(cd) => {
                c.put("connection.torsion_free", cd.check_torsion_free());
                c.put("connection.metric_compatible", cd.check_metric_compatibility(g));
                match reeb_geodesy(cps, g) {
                    Ok(rep) => {
                        c.put("geodesy.gram", rep.gram);
                        c.put("geodesy.geodesic", rep.geodesic);
                        c.put("geodesy.totally_geodesic", rep.totally_geodesic);
                    }
                    Err(e) => c.put("geodesy.geodesic", error_verdict(e)),
                }
                let mut worst = 0.0f64;
                let mut err = None;
                let starts: Vec<Vec<f64>> = if vp.space().is_chart() {
                    vp.pair().sample_points().iter().map(|p| p.iter().map(crate::algebra::poly::rational_to_f64).collect()).collect()
                } else {
                    vec![vec![]]
                };
                'rk: for i in 1..=2 {
                    for s in &starts {
                        match numeric_geodesic_residual(g, &cd, vp.z(i), s, 1.0, 1e-3) {
                            Ok(r) => worst = worst.max(r),
                            Err(e) => {
                                err = Some(e);
                                break 'rk;
                            }
                        }
                    }
                }
                c.residual("geodesy.rk4", worst);
                let v = match err {
                    Some(e) => error_verdict(e),
                    None => Verdict::check(worst < RK4_BOUND, format!("RK4 geodesic residual {worst:.3e} < {RK4_BOUND:e}"), || format!("residual {worst:.3e}")),
                };
                c.put("geodesy.rk4", v);
            }
            Err(e) => c.put("connection.torsion_free", error_verdict(e)),
        }
    } else if !compat_ok {
        c.skip(GEODESY_KEYS, "metric is not compatible");
    }

    if !assoc_ok {
        c.skip(MCP_KEYS, "metric is not associated");
        return;
    }
    for (key, i) in [("killing.z1", 1), ("killing.z2", 2)] {
        if c.wants(key) {
            let v = match killing_check(cps, g, i) {
                Ok(k) => {
                    let agree = Verdict::check(k.agree(), format!("L_Z{i} g = 0 ⟺ L_Z{i} φ = 0"), || format!("L_Z{i} g and L_Z{i} φ disagree"));
                    Verdict::all(format!("Killing check for Z{i}"), &[agree, k.lie_g_zero, k.lie_phi_zero])
                }
                Err(e) => error_verdict(e),
            };
            c.put(key, v);
        }
    }
    let eq = Verdict::check(
        decomposable.is_failed() == orth.is_failed(),
        "decomposable ⟺ TF1 ⊥ TF2",
        || format!("decomposable: {}, orthogonal: {}", decomposable.status_name(), orth.status_name()),
    );
    c.put("equivalence", eq);
    if decomposable.is_failed() {
        c.skip(&MCP_KEYS[3..], "φ is not decomposable");
        return;
    }
    let mcp = match MetricContactPair::new(cps.clone(), g.clone()) {
        Ok(m) => m,
        Err(e) => {
            c.put("leaves.contact_metric.tf2", error_verdict(e));
            return;
        }
    };
    let leaves: [(&str, Result<crate::pair::DistributionFrame, crate::Error>, RestrictionMode); 4] = [
        ("leaves.contact_metric.tf2", Ok(vp.tf(2).clone()), RestrictionMode::LeafContactMetric(1)),
        ("leaves.contact_metric.tf1", Ok(vp.tf(1).clone()), RestrictionMode::LeafContactMetric(2)),
        ("leaves.mcp.ker_d_alpha1", vp.ker_d_alpha(1), RestrictionMode::LeafMCP(1)),
        ("leaves.mcp.ker_d_alpha2", vp.ker_d_alpha(2), RestrictionMode::LeafMCP(2)),
    ];
    for (key, frame, mode) in leaves {
        if !c.wants(key) {
            continue;
        }
        let v = frame.and_then(|f| verify_restricted_contact_metric(&mcp, &f, mode)).unwrap_or_else(error_verdict);
        c.put(key, v);
    }
}

fn run_polarization(c: &mut Collector, vp: &VerifiedPair, k: &MetricField, tol: f64) {
    for (key, flag) in [("polarize.decomposable", true), ("polarize.plain", false)] {
        let pol = match build_associated_by_polarization(vp, k, flag) {
            Ok(p) => p,
            Err(e) => {
                c.put(key, error_verdict(e));
                continue;
            }
        };
        match pol.worst_residuals() {
            Ok(r) => {
                c.residual(&format!("{key}.associated"), r.max_identity_residual());
                c.residual(&format!("{key}.tg_invariance"), r.decomposable);
                c.residual(&format!("{key}.orthogonality"), r.orthogonality);
                c.residual(&format!("{key}.min_eigenvalue"), r.min_eigenvalue);
            }
            Err(e) => {
                c.put(key, error_verdict(e));
                continue;
            }
        }
        c.put(key, pol.check(tol).unwrap_or_else(error_verdict));
        if flag {
            c.put("polarize", pol.check(tol).unwrap_or_else(error_verdict));
            let mut eq_fail = None;
            let mut kill_fail = None;
            for p in pol.sample_points_f64() {
                match pol.residuals(&p) {
                    Ok(r) => {
                        if (r.decomposable < tol) != (r.orthogonality < tol) {
                            eq_fail = Some(format!("TG invariance residual {:.3e}, orthogonality residual {:.3e}", r.decomposable, r.orthogonality));
                        }
                    }
                    Err(e) => eq_fail = Some(e.to_string()),
                }
                for i in 1..=2 {
                    match pol.killing_residuals(i, &p, 1e-5) {
                        Ok((lg, lphi)) => {
                            c.residual(&format!("polarize.killing.z{i}.lie_g"), lg);
                            if (lg < KILLING_FD_TOL) != (lphi < KILLING_FD_TOL) {
                                kill_fail = Some(format!("|L_Z{i} g| = {lg:.3e}, |L_Z{i} φ| = {lphi:.3e}"));
                            }
                        }
                        Err(e) => kill_fail = Some(e.to_string()),
                    }
                }
            }
            let status = |fail: Option<String>, detail: &str| match fail {
                Some(w) => Verdict::failed(w, detail),
                None if pol.is_constant() => Verdict::verified(detail),
                None => Verdict::sample_verified(pol.sample_points_f64().len(), detail),
            };
            c.put("polarize.equivalence", status(eq_fail, "decomposable ⟺ orthogonal for the polarized pair"));
            c.put("polarize.killing", status(kill_fail, "L_Z g = 0 ⟺ L_Z φ = 0 for the polarized pair"));
        }
    }
}

fn finish(c: Collector, model: &Model, verb: Verb, opts: &RunOptions) -> Report {
    let mut versions = BTreeMap::new();
    versions.insert("cpair-core".to_string(), env!("CARGO_PKG_VERSION").to_string());
    Report {
        fixture: model.id().to_string(),
        verb: verb.as_str().to_string(),
        timings: opts.timings.then_some(c.timings),
        verdicts: c.verdicts,
        residuals: c.residuals,
        skipped: c.skipped,
        versions,
    }
}
