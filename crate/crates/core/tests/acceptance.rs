//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use cpair_core::algebra::poly::rational_to_f64;
use cpair_core::algebra::{rat, Rational};
use cpair_core::connection::{christoffel, numeric_geodesic_residual, reeb_geodesy};
use cpair_core::exterior::{Form, MetricField, VectorField};
use cpair_core::fixture::{load_bundled, Model};
use cpair_core::metric::{
    are_foliations_orthogonal, build_associated_by_polarization, build_compatible, compatible_corollaries, is_associated, is_compatible,
    verify_restricted_contact_metric, MetricContactPair, Polarization, RestrictionMode,
};
use cpair_core::pair::{reeb_identities, VerifiedPair};
use cpair_core::report::{run, RunOptions, Verb, RK4_BOUND};
use cpair_core::structure::{is_decomposable, ContactPairStructure};
use cpair_core::verdict::Status;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const FIXTURES: [&str; 3] = ["local_model_1_1", "r6_example", "nilpotent_g6"];
const TOL: f64 = 1e-9;
const RANDOM_TRIALS: u64 = 10;
const SPD_PER_FIXTURE: u64 = 20;
const CALCULUS_CASES: u64 = 100;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(name: &str) -> Result<Model, String> {
    load_bundled(name).map_err(|e| format!("{name}: {e}"))
}

fn structure(m: &Model) -> Result<ContactPairStructure, String> {
    let vp = VerifiedPair::new(m.pair.clone()).map_err(|e| format!("{}: {e}", m.id()))?;
    let phi = m.phi.clone().ok_or_else(|| format!("{}: no φ", m.id()))?;
    ContactPairStructure::new(vp, phi).map_err(|e| format!("{}: {e}", m.id()))
}

fn random_points(r: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count).map(|_| (0..n).map(|_| rat(r.random_range(-3..=3), r.random_range(1..=3))).collect()).collect()
}

fn points_f64(m: &Model) -> Vec<Vec<f64>> {
    m.pair.sample_points().iter().map(|p| p.iter().map(rational_to_f64).collect()).collect()
}

/// Bundled fixtures whose forms admit polarization.
fn polarizable() -> Result<Vec<Model>, String> {
    let mut out = Vec::new();
    for name in FIXTURES {
        let m = model(name)?;
        let vp = VerifiedPair::new(m.pair.clone()).map_err(|e| e.to_string())?;
        if build_associated_by_polarization(&vp, &MetricField::euclidean(&m.space), false).is_ok() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Pair with extra random sample points on charts.
fn sampled_pair(m: &Model, r: &mut ChaCha8Rng) -> Result<VerifiedPair, String> {
    let pair = if m.space.is_chart() { m.pair.clone().with_sample_points(random_points(r, m.space.dim(), 4)) } else { m.pair.clone() };
    VerifiedPair::new(pair).map_err(|e| e.to_string())
}

fn fixture_suite() -> Outcome {
    let start = Instant::now();
    let opts = RunOptions::default();
    let mut notes = Vec::new();
    for name in FIXTURES {
        let rep = run(Verb::Theorems, &model(name)?, &opts);
        let code = rep.exit_code();
        match name {
            "nilpotent_g6" => {
                ensure(code == 0 && rep.verdicts.values().all(|v| v.is_verified()), || format!("{name}: exit {code}, failed {:?}", rep.failed()))?;
            }
            "local_model_1_1" => {
                ensure(code <= 2 && rep.failed().is_empty(), || format!("{name}: exit {code}, failed {:?}", rep.failed()))?;
                ensure(rep.verdicts.contains_key("polarize"), || format!("{name}: no polarized MCP check"))?;
            }
            _ => {
                ensure(rep.failed() == ["associated", "decomposable"], || format!("{name}: failed {:?}", rep.failed()))?;
                let others_verified = rep.verdicts.iter().filter(|(k, _)| !["associated", "decomposable"].contains(&k.as_str())).all(|(_, v)| v.is_verified());
                ensure(others_verified, || format!("{name}: a check other than associated/decomposable is not Verified"))?;
            }
        }
        notes.push(format!("{name} exit {code} ({} checks)", rep.verdicts.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("runtime {secs:.2}s"))?;
    Ok(format!("{}; {secs:.2}s", notes.join(", ")))
}

fn reeb_exactness() -> Outcome {
    for name in FIXTURES {
        let m = model(name)?;
        let vp = VerifiedPair::new(m.pair.clone()).map_err(|e| e.to_string())?;
        let v = reeb_identities(&m.pair, vp.z(1), vp.z(2)).map_err(|e| e.to_string())?;
        ensure(v.is_verified(), || format!("{name}: {v:?}"))?;
        ensure(vp.z(1).bracket(vp.z(2)).map_err(|e| e.to_string())?.is_zero(), || format!("{name}: [Z1, Z2] ≠ 0"))?;
        for i in 1..=2 {
            for j in 1..=2 {
                let a = vp.alpha(i).apply(&[vp.z(j)]).map_err(|e| e.to_string())?;
                ensure(a.is_one() == (i == j) && (i == j || a.is_zero()), || format!("{name}: α{i}(Z{j}) = {}", m.space.show(&a)))?;
                ensure(vp.d_alpha(i).interior(vp.z(j)).map_err(|e| e.to_string())?.is_zero(), || format!("{name}: i_Z{j} dα{i} ≠ 0"))?;
            }
        }
    }
    Ok(format!("{} fixtures, zero symbolic residual", FIXTURES.len()))
}

fn geodesy() -> Outcome {
    let mut r = rng(3);
    let mut count = 0;
    let mut worst = 0.0f64;
    for name in FIXTURES {
        let m = model(name)?;
        let cps = structure(&m)?;
        let mut metrics = vec![m.metric.clone().ok_or("missing metric")?];
        metrics.push(build_compatible(&cps, &spd_metric(&mut r, &m.space)).map_err(|e| e.to_string())?);
        for g in &metrics {
            let rep = reeb_geodesy(&cps, g).map_err(|e| format!("{name}: {e}"))?;
            ensure(rep.geodesic.is_verified() && rep.totally_geodesic.is_verified(), || format!("{name}: {:?} {:?}", rep.geodesic, rep.totally_geodesic))?;
            ensure(rep.nabla.iter().flatten().chain(rep.second_fundamental.iter().flatten()).all(VectorField::is_zero), || format!("{name}: nonzero ∇ or B"))?;
            let cd = christoffel(g).map_err(|e| e.to_string())?;
            for p in points_f64(&m) {
                for i in 1..=2 {
                    let res = numeric_geodesic_residual(g, &cd, cps.vp().z(i), &p, 1.0, 1e-3).map_err(|e| format!("{name}: {e}"))?;
                    ensure(res < RK4_BOUND, || format!("{name}: RK4 residual {res:.3e} for Z{i} from {p:?}"))?;
                    worst = worst.max(res);
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} compatible metrics, RK4 residual ≤ {worst:.2e}"))
}

/// Decomposability and orthogonality of one polarized instance, per sample point.
fn polarized_agreement(pol: &Polarization) -> Result<(usize, usize), String> {
    let (mut both, mut neither) = (0, 0);
    for p in pol.sample_points_f64() {
        let r = pol.residuals(&p).map_err(|e| e.to_string())?;
        ensure(r.max_identity_residual() < TOL && r.min_eigenvalue > 0.0, || format!("not an MCP at {p:?}: {r:?}"))?;
        let (dec, orth) = (r.decomposable < TOL, r.orthogonality < TOL);
        ensure(dec == orth, || format!("decomposable {:.3e} vs orthogonality {:.3e} at {p:?}", r.decomposable, r.orthogonality))?;
        if dec {
            both += 1;
        } else {
            neither += 1;
        }
    }
    if let Some((phi, g)) = pol.exact() {
        let cps = ContactPairStructure::new(pol.vp().clone(), phi).map_err(|e| e.to_string())?;
        let (dec, orth) = (is_decomposable(&cps).is_verified(), are_foliations_orthogonal(cps.vp(), &g).is_verified());
        ensure(dec == orth, || format!("exact polarization: decomposable {dec}, orthogonal {orth}"))?;
    }
    Ok((both, neither))
}

fn equivalence() -> Outcome {
    let mut exact = 0;
    for name in FIXTURES {
        let m = model(name)?;
        let cps = structure(&m)?;
        let g = m.metric.as_ref().ok_or("missing metric")?;
        if is_associated(&cps, g).passed() {
            let (dec, orth) = (is_decomposable(&cps).is_verified(), are_foliations_orthogonal(cps.vp(), g).is_verified());
            ensure(dec == orth, || format!("{name}: decomposable {dec}, orthogonal {orth}"))?;
            exact += 1;
        }
    }
    let mut r = rng(4);
    let (mut trials, mut both, mut neither) = (0, 0, 0);
    for m in polarizable()? {
        for t in 0..RANDOM_TRIALS {
            let vp = sampled_pair(&m, &mut r)?;
            let k = spd_metric(&mut r, &m.space);
            for flag in [t % 2 == 0, t % 2 == 1] {
                let pol = build_associated_by_polarization(&vp, &k, flag).map_err(|e| format!("{}: {e}", m.id()))?;
                let (b, n) = polarized_agreement(&pol).map_err(|e| format!("{} trial {t}: {e}", m.id()))?;
                both += b;
                neither += n;
                trials += 1;
            }
        }
    }
    ensure(trials >= 10, || format!("only {trials} polarization trials"))?;
    Ok(format!("{exact} exact MCP fixtures, {trials} polarizations ({both} points both hold, {neither} neither)"))
}

fn constructors() -> Outcome {
    let mut r = rng(5);
    let mut built = 0;
    for name in FIXTURES {
        let m = model(name)?;
        let cps = structure(&m)?;
        for _ in 0..SPD_PER_FIXTURE {
            let h = spd_metric(&mut r, &m.space);
            let g = build_compatible(&cps, &h).map_err(|e| format!("{name}: {e}"))?;
            let v = is_compatible(&cps, &g);
            ensure(v.is_verified(), || format!("{name}: {v:?}"))?;
            built += 1;
        }
    }
    let mut polarized = 0;
    for m in polarizable()? {
        let mut aux: Vec<MetricField> = m.aux_metric.iter().cloned().collect();
        aux.extend((0..RANDOM_TRIALS).map(|_| spd_metric(&mut r, &m.space)));
        for k in &aux {
            let vp = sampled_pair(&m, &mut r)?;
            for flag in [false, true] {
                let pol = build_associated_by_polarization(&vp, k, flag).map_err(|e| format!("{}: {e}", m.id()))?;
                let v = pol.check(TOL).map_err(|e| e.to_string())?;
                ensure(v.passed(), || format!("{}: {v:?}", m.id()))?;
                if flag {
                    let w = pol.worst_residuals().map_err(|e| e.to_string())?;
                    ensure(w.decomposable < TOL, || format!("{}: decomposable residual {:.3e}", m.id(), w.decomposable))?;
                }
                polarized += 1;
            }
        }
    }
    Ok(format!("{built} compatible metrics exact, {polarized} polarizations within {TOL:e}"))
}

fn leaves() -> Outcome {
    let m = model("nilpotent_g6")?;
    let mcp = MetricContactPair::new(structure(&m)?, m.metric.clone().ok_or("missing metric")?).map_err(|e| e.to_string())?;
    let vp = mcp.vp().clone();
    let cases = [
        ("TF1", vp.tf(1).clone(), RestrictionMode::LeafContactMetric(2)),
        ("TF2", vp.tf(2).clone(), RestrictionMode::LeafContactMetric(1)),
        ("ker dα1", vp.ker_d_alpha(1).map_err(|e| e.to_string())?, RestrictionMode::LeafMCP(1)),
        ("ker dα2", vp.ker_d_alpha(2).map_err(|e| e.to_string())?, RestrictionMode::LeafMCP(2)),
    ];
    for (label, frame, mode) in &cases {
        let v = verify_restricted_contact_metric(&mcp, frame, *mode).map_err(|e| format!("{label}: {e}"))?;
        ensure(v.status == Status::Verified, || format!("{label}: {v:?}"))?;
    }
    Ok(format!("{} leaf structures verified exactly", cases.len()))
}

fn calculus() -> Outcome {
    for seed in 0..CALCULUS_CASES {
        let mut r = rng(seed);
        let chart = chart3();
        let frame = nilpotent_frame(&mut r, 5, 3);
        let frame_form = |r: &mut ChaCha8Rng, p: usize| {
            let terms = cpair_core::exterior::multi::index_tuples(5, p).into_iter().map(|t| (t, cpair_core::algebra::RatFun::from_int(r.random_range(-2..=2))));
            Form::from_terms(&frame, p, terms.collect::<Vec<_>>()).expect("valid form")
        };
        for p in 0..=2 {
            let (w, v) = (form(&mut r, &chart, p), frame_form(&mut r, p));
            ensure(w.ext_d().ext_d().is_zero() && v.ext_d().ext_d().is_zero(), || format!("seed {seed}: d∘d ≠ 0 in degree {p}"))?;
            let (b, c) = (form(&mut r, &chart, 1), frame_form(&mut r, 1));
            for (a, b) in [(&w, &b), (&v, &c)] {
                let first = a.ext_d().wedge(b).unwrap();
                let second = a.wedge(&b.ext_d()).unwrap();
                let rhs = if p % 2 == 0 { first.add(&second) } else { first.sub(&second) }.unwrap();
                ensure(a.wedge(b).unwrap().ext_d() == rhs, || format!("seed {seed}: Leibniz fails in degree {p}"))?;
            }
            if p > 0 {
                for (a, x) in [(&w, field(&mut r, &chart)), (&v, constant_field(&mut r, &frame))] {
                    let rhs = a.ext_d().interior(&x).unwrap().add(&a.interior(&x).unwrap().ext_d()).unwrap();
                    ensure(a.lie_derivative(&x).unwrap() == rhs, || format!("seed {seed}: Cartan fails in degree {p}"))?;
                }
            }
        }
        for g in [chart_metric(&mut r, &chart), spd_metric(&mut r, &frame)] {
            let cd = christoffel(&g).map_err(|e| e.to_string())?;
            ensure(cd.check_torsion_free().is_verified(), || format!("seed {seed}: torsion"))?;
            ensure(cd.check_metric_compatibility(&g).is_verified(), || format!("seed {seed}: ∇g ≠ 0"))?;
        }
    }
    Ok(format!("{CALCULUS_CASES} random cases each on a chart and a nilpotent frame"))
}

fn corollaries() -> Outcome {
    let mut r = rng(8);
    let (mut tried, mut compatible) = (0, 0);
    for name in FIXTURES {
        let m = model(name)?;
        let cps = structure(&m)?;
        let mut candidates: Vec<MetricField> = m.metric.iter().chain(m.aux_metric.iter()).cloned().collect();
        candidates.push(MetricField::euclidean(&m.space));
        for _ in 0..5 {
            candidates.push(build_compatible(&cps, &spd_metric(&mut r, &m.space)).map_err(|e| e.to_string())?);
        }
        if let Ok(pol) = build_associated_by_polarization(cps.vp(), &MetricField::euclidean(&m.space), true) {
            candidates.extend(pol.exact().map(|(_, g)| g));
        }
        for g in &candidates {
            tried += 1;
            if is_compatible(&cps, g).is_verified() {
                compatible += 1;
                let v = compatible_corollaries(&cps, g);
                ensure(v.is_verified(), || format!("{name}: {v:?}"))?;
            }
            if is_associated(&cps, g).passed() {
                ensure(is_compatible(&cps, g).is_verified(), || format!("{name}: associated but not compatible"))?;
            }
        }
    }
    ensure(compatible > 0, || "no compatible metric found".into())?;
    Ok(format!("{compatible} of {tried} candidate metrics compatible, corollaries exact for all"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 fixture suite", fixture_suite),
        ("AC2 Reeb exactness", reeb_exactness),
        ("AC3 Reeb geodesy", geodesy),
        ("AC4 decomposable iff orthogonal", equivalence),
        ("AC5 constructors", constructors),
        ("AC6 leafwise structures", leaves),
        ("AC7 calculus engine", calculus),
        ("AC8 compatible corollaries", corollaries),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {name}: {e} ({secs:.2}s)");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
