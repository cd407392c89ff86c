//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use magicineq::evaluator::{EvalParams, Evaluator};
use magicineq::forms::{Entry, FormRegistry};
use magicineq::numerics::{enclose_gamma_quarter, Interval, Rational};
use magicineq::qseries::CoeffPoly;
use magicineq::verifier::{
    check_h_typo, check_identities, check_lemma_constants, check_quadratic_positivity, check_signs,
    check_special_values, exact_suites, Certificate, Evidence, Status, PRINTED_H3,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn pv(terms: &[((u32, u32), i64)]) -> CoeffPoly {
    CoeffPoly::from_terms(terms.iter().map(|&(m, c)| (m, int(c))))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn enclosures(c: &Certificate) -> Vec<&Interval> {
    match &c.evidence {
        Evidence::Enclosures { enclosures, .. } => enclosures.iter().map(|e| &e.interval).collect(),
        _ => Vec::new(),
    }
}

fn width(i: &Interval) -> f64 {
    i.width().to_f64()
}

fn failing(certs: &[Certificate]) -> Vec<&str> {
    certs.iter().filter(|c| !c.passed()).map(|c| c.check_id.as_str()).collect()
}

fn identities() -> Outcome {
    let start = Instant::now();
    let certs = check_identities(200);
    let elapsed = start.elapsed();
    ensure(certs.len() == 11, format!("{} checks", certs.len()))?;
    ensure(failing(&certs).is_empty(), format!("failing: {:?}", failing(&certs)))?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:.1?}"))?;
    Ok(format!("11/11 zero residuals at N=200 in {elapsed:.1?}"))
}

fn golden() -> Outcome {
    let reg = FormRegistry::new(16);
    let s = reg.sequences();
    let f = reg.get(Entry::F);
    for (n, c) in [(4, 28800), (6, 1036800), (8, 14169600)] {
        ensure(f.coeff(n) == Some(&pv(&[((2, 0), c)])), format!("f[q^{n}]"))?;
    }
    for (n, c) in [(3, 20480), (5, 2015232), (7, 41656320)] {
        ensure(s.b[n] == int(c), format!("g[q^{n}] = {}", s.b[n]))?;
    }
    // z² = −v² with v = iz
    let ft = [
        (0, pv(&[((0, 0), 2)])),
        (2, pv(&[((1, 1), 480), ((0, 0), 960)])),
        (4, pv(&[((2, 2), 28800), ((1, 1), 123840), ((0, 0), 123840)])),
        (6, pv(&[((2, 2), 1036800), ((1, 1), 3150720), ((0, 0), 2100480)])),
    ];
    for (n, c) in ft {
        ensure(s.c[n] == c, format!("f̃[q^{n}] = {}", s.c[n].display_z()))?;
    }
    let gt = [2, 0, 240, -10240, 134640, -1007616];
    for (n, c) in gt.iter().enumerate() {
        ensure(s.d[n] == int(*c), format!("g̃[q^{n}] = {}", s.d[n]))?;
    }
    ensure(s.alpha[2] == int(518400), format!("α₂ = {}", s.alpha[2]))?;
    ensure(s.beta[2] == int(61920), format!("β₂ = {}", s.beta[2]))?;
    ensure(s.delta[1] == int(720), format!("δ₁ = {}", s.delta[1]))?;
    ensure(s.delta[2] == int(185760), format!("δ₂ = {}", s.delta[2]))?;
    Ok("f, g, f̃, g̃, α₂, β₂, δ₁, δ₂ exact".into())
}

fn lemma_constants() -> Outcome {
    let certs = check_lemma_constants(128);
    ensure(failing(&certs).is_empty(), format!("failing: {:?}", failing(&certs)))?;
    let bounds = [(13130, 13131), (287, 288), (468, 469)];
    let mut shown = Vec::new();
    for (c, (lo, hi)) in certs.iter().zip(bounds) {
        let e = enclosures(c)[0];
        ensure(e.lies_above(&int(lo)) && e.lies_below(&int(hi)), format!("{}: {e} not in ({lo}, {hi})", c.check_id))?;
        shown.push(format!("{:.4}", e.to_f64_pair().0));
    }
    let w = width(enclosures(&certs[0])[0]);
    ensure(w <= 0.01, format!("L0 width {w:e}"))?;
    Ok(format!("L0≈{} L1≈{} L2≈{} (L2 with 123840π e^(-2π)), L0 width {w:.1e}", shown[0], shown[1], shown[2]))
}

fn gamma_quarter() -> Outcome {
    let g = enclose_gamma_quarter(64);
    // 3.62561 read as a five-decimal rounding: the enclosure lies in its cell.
    let cell = (q(3625605, 1000000), q(3625615, 1000000));
    ensure(g.lies_above(&cell.0) && g.lies_below(&cell.1), format!("{g} outside [3.625605, 3.625615]"))?;
    ensure(width(&g) <= 1e-5, format!("width {:e}", width(&g)))?;
    Ok(format!("Γ(1/4) ∈ {g} ⊂ round-to-5 cell of 3.62561, width {:.1e}", width(&g)))
}

fn special_values() -> Outcome {
    let certs = check_special_values(64, 128).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for c in certs.iter().filter(|c| c.check_id != "special_gamma_quarter") {
        ensure(c.passed(), format!("{} failed", c.check_id))?;
        let w: f64 = enclosures(c).iter().map(|e| width(e)).sum();
        ensure(w <= 1e-10, format!("{} width {w:e}", c.check_id))?;
        worst = worst.max(w);
    }
    Ok(format!("E6 ∋ 0; E2, E4, X, Z, W intersect closed forms; max combined width {worst:.1e}"))
}

fn signs() -> Outcome {
    let certs = check_signs(400);
    ensure(failing(&certs).is_empty(), format!("failing: {:?}", failing(&certs)))?;
    for c in &certs {
        if let Evidence::Signs { checked_below, .. } = &c.evidence {
            ensure(*checked_below >= 200, format!("{} only checked below {checked_below}", c.check_id))?;
        }
    }
    let quad = check_quadratic_positivity(64);
    ensure(quad.passed(), "quadratic discriminant")?;
    Ok(format!("{} sign certificates for n < 200, discriminant < 0 at precision 64", certs.len()))
}

fn scan() -> Outcome {
    let start = Instant::now();
    let report = Evaluator::new().scan(&q(1, 8), &q(8, 1), 129, EvalParams::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.rows.len() == 129, format!("{} rows", report.rows.len()))?;
    let bad: Vec<String> = report.rows.iter().filter(|r| !r.passed()).map(|r| r.t.to_string()).collect();
    ensure(bad.is_empty(), format!("failing t: {bad:?}"))?;
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:.1?}"))?;
    Ok(format!("A<0 and B>0 at all 129 points in {elapsed:.1?}"))
}

fn h_typo() -> Outcome {
    let cert = check_h_typo();
    let Evidence::Exact { values } = &cert.evidence else { return Err("no values".into()) };
    let get = |k: &str| values.iter().find(|v| v.name == k).map(|v| v.value.clone()).unwrap_or_default();
    ensure(cert.passed(), "H[q^3] ≠ −d₅")?;
    Ok(format!("H[q^3] = {} = −d₅; printed {}", get("H[q^3]"), PRINTED_H3))
}

fn mutations() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    const N: usize = 32;
    let clean = FormRegistry::new(N);
    let mut undetected = Vec::new();
    for _ in 0..20 {
        let entry = Entry::BASE[rng.random_range(0..Entry::BASE.len())];
        let index = rng.random_range(0..N);
        let reg = FormRegistry::with_mutations(N, vec![clean.perturbation(entry, index)]);
        if !exact_suites(&reg).iter().any(|c| c.status == Status::Fail) {
            undetected.push(format!("{entry}[{index}]"));
        }
    }
    ensure(undetected.is_empty(), format!("undetected: {undetected:?}"))?;
    Ok("20/20 mutations detected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("identity suite", identities),
        ("golden coefficients", golden),
        ("lemma constants", lemma_constants),
        ("constant enclosures", gamma_quarter),
        ("special values", special_values),
        ("sign lemmas", signs),
        ("pointwise scan", scan),
        ("typo resolution", h_typo),
        ("mutation robustness", mutations),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
