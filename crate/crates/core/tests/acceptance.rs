//! Acceptance criteria. Runs as a plain binary (`harness = false`) and prints
//! one PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::f64::consts::{E, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use squaretiled::bounds::{
    landau, massias_comparison, verify_all, BoundsReport, SmallerBound, VerifyConfig,
};
use squaretiled::cylinders::{horizontal_decomposition, integer_lcm};
use squaretiled::veech::{membership, orbit_and_stabilizer, signature};
use squaretiled::{catalog, Direction, Origami, Permutation, Q};

/// Relative guard for comparisons that involve π or e.
const GUARD: f64 = 1e-9;
/// Agreement required between the two area computations.
const AREA_REL_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("runtime {elapsed:?} exceeds {limit:?}")
    })
}

fn lt_guarded(a: f64, b: f64) -> bool {
    a < b - GUARD * a.abs().max(b.abs())
}

fn q(x: Q) -> f64 {
    x.to_f64().unwrap()
}

fn three_directions() -> Vec<Direction> {
    vec![
        Direction::HORIZONTAL,
        Direction::VERTICAL,
        Direction::new(1, 1).unwrap(),
    ]
}

fn all_checks_pass(r: &BoundsReport) -> Result<(), String> {
    let failed: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), || format!("failed checks: {failed:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let torus = Origami::parse("n=1\nh=()\nv=()\nmark_all_vertices=true").unwrap();
    let st = torus.surface_type().map_err(|e| e.to_string())?;
    ensure((st.g, st.n) == (1, 1), || format!("type {st:?}"))?;

    let ct = orbit_and_stabilizer(&torus, 10).map_err(|e| e.to_string())?;
    let sig = signature(&ct).map_err(|e| e.to_string())?;
    ensure(sig.mu == 1, || format!("mu = {}", sig.mu))?;
    ensure(
        (sig.p, sig.k(), sig.e2, sig.e3, sig.k0) == (0, 3, 1, 1, 1),
        || format!("signature {sig:?}"),
    )?;
    let by_index = sig.mu as f64 * PI / 3.0;
    let by_signature = 2.0 * PI * (2.0 * sig.p as f64 - 2.0 + 0.5 + 2.0 / 3.0 + 1.0);
    ensure((by_index - PI / 3.0).abs() <= AREA_REL_TOL * PI, || {
        "area != π/3".into()
    })?;
    ensure(
        (by_index - by_signature).abs() <= AREA_REL_TOL * by_index,
        || format!("areas {by_index} vs {by_signature}"),
    )?;

    let report = verify_all(
        &torus,
        &VerifyConfig {
            directions: three_directions(),
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let s = &report.signature;
    ensure(s.b0 == 1 && s.c1 == 1, || {
        format!("b0={}, c1={}", s.b0, s.c1)
    })?;
    ensure(
        membership(&s.c1_witness, &ct).unwrap() && s.c1_witness.c.abs() == 1,
        || format!("bad witness {}", s.c1_witness),
    )?;
    ensure(report.kernel.order == 2, || {
        format!("Ker(D) order {}", report.kernel.order)
    })?;
    all_checks_pass(&report)?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "torus: type (1,1), mu=1, (0,3;2,3,inf), area=pi/3, b0=c1=1 witness {}, |Ker D|=2, {} checks",
        s.c1_witness,
        report.checks.len()
    ))
}

/// Equivalence by exhaustive search over relabelings, including the `-I` move.
fn brute_equivalent(a: &(Permutation, Permutation), b: &(Permutation, Permutation)) -> bool {
    let n = a.0.len();
    let targets = [b.clone(), (b.0.inverse(), b.1.inverse())];
    (0..n).permutations(n).any(|images| {
        let phi = Permutation::from_images(images).unwrap();
        let conj = |p: &Permutation| phi.compose(p).compose(&phi.inverse());
        let moved = (conj(&a.0), conj(&a.1));
        targets.contains(&moved)
    })
}

/// Orbit size under `T: (h,v) ↦ (h, v∘h⁻¹)` and `S: (h,v) ↦ (v, h⁻¹)`,
/// deduplicated by brute-force equivalence.
fn brute_orbit_size(h: Permutation, v: Permutation) -> usize {
    let mut orbit = vec![(h, v)];
    let mut i = 0;
    while i < orbit.len() {
        let (h, v) = orbit[i].clone();
        for next in [
            (h.clone(), v.compose(&h.inverse())),
            (v.clone(), h.inverse()),
        ] {
            if !orbit.iter().any(|o| brute_equivalent(o, &next)) {
                orbit.push(next);
            }
        }
        i += 1;
    }
    orbit.len()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let l = Origami::parse("n=3\nh=(1 2)\nv=(1 3)").unwrap();
    ensure(l.genus() == 2, || format!("genus {}", l.genus()))?;
    let vs = l.vertices();
    ensure(
        vs.len() == 1 && vs[0].cone_multiple == 3 && vs[0].marked,
        || format!("vertices {vs:?}"),
    )?;
    let dec = horizontal_decomposition(&l).map_err(|e| e.to_string())?;
    let shape: Vec<_> = dec.cylinders.iter().map(|c| (c.width, c.height)).collect();
    ensure(shape == vec![(2, 1), (1, 1)], || {
        format!("cylinders {shape:?}")
    })?;
    let moduli = dec.moduli();
    ensure(
        moduli == vec![Q::from_integer(2), Q::from_integer(1)],
        || format!("moduli {moduli:?}"),
    )?;
    let ratio = moduli[0] / moduli[1];
    ensure(ratio == Q::from_integer(2), || format!("ratio {ratio}"))?;

    let oracle = brute_orbit_size(l.h().clone(), l.v().clone());
    let ct = orbit_and_stabilizer(&l, 1000).map_err(|e| e.to_string())?;
    ensure(ct.mu() == oracle, || {
        format!("mu {} vs oracle {oracle}", ct.mu())
    })?;
    ensure(oracle == 3, || format!("oracle index {oracle}, expected 3"))?;

    let report = verify_all(
        &l,
        &VerifyConfig {
            directions: three_directions(),
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    all_checks_pass(&report)?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "L-tromino: genus 2, one 6pi point, cylinders (2,1),(1,1), ratio 2/1, mu={} (oracle {oracle}), {} checks",
        ct.mu(),
        report.checks.len()
    ))
}

/// Failure counters for sub-criteria (a)–(j).
#[derive(Default, Clone, Copy)]
struct Tally {
    evaluated: [u64; 10],
    failed: [u64; 10],
}

impl Tally {
    fn record(&mut self, item: usize, ok: bool) {
        self.evaluated[item] += 1;
        if !ok {
            self.failed[item] += 1;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..10 {
            self.evaluated[i] += other.evaluated[i];
            self.failed[i] += other.failed[i];
        }
        self
    }
}

/// Re-derives every inequality of criterion 3 from the raw report fields.
fn audit(o: &Origami, r: &BoundsReport) -> Tally {
    let mut tally = Tally::default();
    let (g, n) = (r.surface.genus as i64, r.surface.n_marked as i64);
    let t = 3 * g - 3 + n;
    let tf = t as f64;
    let area = r.signature.mu as f64 * PI / 3.0;
    let k0 = r.signature.k0 as f64;
    let exp5 = (5.0 * tf / E).exp();
    let ker = r.kernel.order as i64;
    let p = r.signature.p as f64;
    let k = r.signature.k as f64;
    let thm31 = 32.0 * PI * (2.0 * p - 2.0 + k) * tf * tf * (2.0 * tf + 3.0 * exp5);
    let euler_orbifold = area / (2.0 * PI);
    let thm32 = 4.0 * PI * exp5 * euler_orbifold;

    tally.record(3, ker <= 4 * t);
    for d in &r.directions {
        let moduli: Vec<Q> = d.cylinders.iter().map(|c| c.modulus.0).collect();
        let area_sum: u64 = d.cylinders.iter().map(|c| c.width * c.height).sum();
        let saddles: i64 = d.cylinders.iter().map(|c| (c.s1 + c.s2) as i64).sum();
        tally.record(0, area_sum == o.n_squares() as u64);
        tally.record(1, saddles == 2 * (2 * g - 2 + n));
        tally.record(2, saddles <= 4 * t);
        tally.record(4, d.m as i64 <= t);

        let b0c1 = (d.b0 * d.c1) as f64;
        tally.record(5, d.b0 * d.c1 >= 1);
        tally.record(5, lt_guarded(b0c1, area));
        tally.record(5, lt_guarded(b0c1, area - k0 + 1.0));

        let b0 = Q::from_integer(d.b0 as i64);
        for m in &moduli {
            let ratio = q(b0 / m);
            tally.record(6, lt_guarded(0.5 * (-5.0 * tf / E).exp(), ratio));
            tally.record(6, lt_guarded(ratio, 2.0 * exp5 * area * area));
        }
        for (mi, mj) in moduli.iter().tuple_combinations() {
            for ratio in [mi / mj, mj / mi] {
                tally.record(7, lt_guarded(q(ratio).sqrt(), thm32));
            }
        }
        if moduli.len() == 1 {
            tally.record(7, lt_guarded(1.0, thm32));
        }

        let alpha = d.alpha_eff.0;
        for m in &moduli {
            let ni = alpha * b0 / m;
            tally.record(8, ni.is_integer() && ni >= Q::from_integer(1));
        }
        tally.record(8, lt_guarded(q(alpha), 2.0 * exp5));

        let prop = moduli.iter().fold(Q::from_integer(0), |acc, m| {
            acc + Q::from_integer(ker) + *m * 3 / b0
        }) * Q::from_integer(2 * (d.b0 * d.c1) as i64 * ker);
        tally.record(9, prop == d.prop_bound.0 && lt_guarded(q(prop), thm31));
    }
    tally
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let classes = catalog::classes_up_to(6);
    let config = VerifyConfig {
        directions: Direction::enumerate(5),
        ..Default::default()
    };
    let results: Vec<Result<(Tally, bool, usize), String>> = classes
        .par_iter()
        .flat_map_iter(|o| [o.with_marking(false), o.with_marking(true)])
        .filter(|o| o.mark_all_vertices() || o.surface_type().is_ok())
        .map(|o| {
            let r = verify_all(&o, &config).map_err(|e| format!("{o}: {e}"))?;
            Ok((audit(&o, &r), r.all_pass(), r.checks.len()))
        })
        .collect();
    let mut tally = Tally::default();
    let mut surfaces = 0;
    let mut report_failures = 0;
    let mut checks = 0;
    for res in results {
        let (t, pass, c) = res?;
        tally = tally.merge(t);
        surfaces += 1;
        checks += c;
        report_failures += (!pass) as usize;
    }
    let labels = "abcdefghij";
    let failed: Vec<String> = (0..10)
        .filter(|&i| tally.failed[i] > 0 || tally.evaluated[i] == 0)
        .map(|i| {
            format!(
                "({}) {}/{} failed",
                &labels[i..i + 1],
                tally.failed[i],
                tally.evaluated[i]
            )
        })
        .collect();
    ensure(failed.is_empty(), || failed.join(", "))?;
    ensure(report_failures == 0, || {
        format!("{report_failures} reports with failed checks")
    })?;
    within(start.elapsed(), Duration::from_secs(600))?;
    let total: u64 = tally.evaluated.iter().sum();
    Ok(format!(
        "{} classes (N<=6), {surfaces} marked surfaces, {} slopes: {total} audited inequalities (a)-(j) and {checks} report checks, 0 failures in {:.1?}",
        classes.len(),
        config.directions.len(),
        start.elapsed()
    ))
}

fn landau_brute(m: u64) -> u64 {
    fn go(rest: u64, max_part: u64, acc: u64) -> u64 {
        if rest == 0 {
            return acc;
        }
        (1..=max_part.min(rest))
            .map(|part| go(rest - part, part, num_integer::lcm(acc, part)))
            .max()
            .unwrap()
    }
    go(m, m, 1)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for m in 0..=12 {
        let (dp, brute) = (landau(m), BigUint::from(landau_brute(m)));
        ensure(dp == brute, || {
            format!("G({m}): dp {dp} vs brute force {brute}")
        })?;
    }
    for m in 0..=100u64 {
        let g = landau(m).to_f64().unwrap();
        ensure(g <= (m as f64 / E).exp(), || {
            format!("G({m}) = {g} > exp(m/e)")
        })?;
    }
    for m in 2..=27 {
        ensure(
            massias_comparison(m).smaller == SmallerBound::ExpForm,
            || format!("m={m}: Massias smaller"),
        )?;
    }
    ensure(
        massias_comparison(28).smaller == SmallerBound::Massias,
        || "m=28: exp form smaller".into(),
    )?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("G matches partition brute force for m<=12; G(m)<=exp(m/e) for m<=100; exp form smaller for 2<=m<=27, Massias at 28".into())
}

fn criterion_5() -> Outcome {
    let classes = catalog::classes_up_to(6);
    let failures: Vec<String> = classes
        .par_iter()
        .filter_map(|o| {
            let ct = match orbit_and_stabilizer(o, 1_000_000) {
                Ok(ct) => ct,
                Err(e) => return Some(format!("{o}: {e}")),
            };
            let mut bad = Vec::new();
            if !ct.sigma_s.compose(&ct.sigma_s).is_identity() {
                bad.push("S^2 != id");
            }
            if !ct.sigma_s.compose(&ct.sigma_t).pow(3).is_identity() {
                bad.push("(ST)^3 != id");
            }
            match signature(&ct) {
                Err(_) => bad.push("non-integral genus"),
                Ok(sig) => {
                    if sig.cusp_widths.iter().sum::<u64>() != sig.mu as u64 {
                        bad.push("cusp widths do not sum to mu");
                    }
                    for mark in [false, true] {
                        let Ok(dec) = horizontal_decomposition(&o.with_marking(mark)) else {
                            continue;
                        };
                        if integer_lcm(&dec.moduli()) % sig.b0 as i64 != 0 {
                            bad.push("b0 does not divide lcm of horizontal moduli");
                        }
                    }
                }
            }
            (!bad.is_empty()).then(|| format!("{o}: {}", bad.join(", ")))
        })
        .collect();
    ensure(failures.is_empty(), || failures.iter().take(5).join("; "))?;
    Ok(format!(
        "{} coset tables: S^2=id, (ST)^3=id, integral genus, sum of cusp widths = mu, b0 | lcm(moduli)",
        classes.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 5] = [
        ("1 torus baseline", criterion_1),
        ("2 L-tromino", criterion_2),
        ("3 exhaustive property suite", criterion_3),
        ("4 Landau function", criterion_4),
        ("5 group-theory consistency", criterion_5),
    ];
    let mut all_ok = true;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(why) => {
                all_ok = false;
                println!("[FAIL] criterion {name}: {why}");
            }
        }
    }
    println!(
        "[N/A ] criterion 6 headline section counts: not computable here; rests on criteria 1-5"
    );
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
