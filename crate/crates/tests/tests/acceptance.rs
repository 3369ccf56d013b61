//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use kplane::algo::{
    algorithm1, algorithm2, f_bound, neighborhood_diagnostics, phase1, phase2, phase2_report, phase3, replanarize,
};
use kplane::gen::{gen_random_kplane, GenConfig};
use kplane::io::{ingest_geometric, GeometricDrawing};
use kplane::lens::{all_lenses_of_pair, classify_lens, enumerate_lenses, find_lens, oracle_lenses, BoundaryKind, LensClass, LensKey};
use kplane::model::{is_simple, materialize_planarization, CrossingIndex, DrawingState, NodeKind};
use kplane::ops::{quasi_zero_reroute, reroute, swap};
use num_rational::BigRational;
use num_traits::Zero;

type Pairs = BTreeMap<(usize, usize), usize>;

struct Criterion {
    name: &'static str,
    checks: usize,
    failed: usize,
    first_failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion {
            name,
            checks: 0,
            failed: 0,
            first_failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.first_failures.len() < 3 {
                self.first_failures.push(what());
            }
        }
    }

    fn note(&mut self, note: String) {
        self.notes.push(note);
    }

    fn passed(&self) -> bool {
        self.failed == 0 && self.checks > 0
    }

    fn print(&self, id: usize) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id} ({}): {verdict} [{} checks, {} failed] {}",
            self.name,
            self.checks,
            self.failed,
            self.notes.join("; ")
        );
        for f in &self.first_failures {
            println!("    {f}");
        }
    }
}

fn state_of(gd: &GeometricDrawing) -> DrawingState {
    DrawingState::initial(ingest_geometric(gd).expect("generated drawings ingest")).expect("valid network")
}

/// Common points per unordered edge pair, read off the materialized
/// planarization: crossing nodes plus a shared endpoint. Self-crossings are
/// stored under `(e, e)`.
fn common_points(state: &DrawingState) -> Pairs {
    let planar = materialize_planarization(state).expect("planarization");
    let mut out = Pairs::new();
    for node in &planar.network.nodes {
        if let NodeKind::Crossing(e, f) = *node {
            *out.entry((e.min(f), e.max(f))).or_default() += 1;
        }
    }
    let graph = &state.network().graph;
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (e, ends) in graph.edges.iter().enumerate() {
        for &v in ends {
            incident.entry(v).or_default().push(e);
        }
    }
    for edges in incident.values() {
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                *out.entry((e.min(f), e.max(f))).or_default() += 1;
            }
        }
    }
    out
}

fn crossings_per_edge(state: &DrawingState) -> Vec<usize> {
    let planar = materialize_planarization(state).expect("planarization");
    let mut x = vec![0; state.edge_count()];
    for node in &planar.network.nodes {
        if let NodeKind::Crossing(e, f) = *node {
            x[e] += 1;
            x[f] += 1;
        }
    }
    x
}

/// Simple iff no self-crossing, adjacent pairs never cross and other pairs
/// cross at most once; computed without the crossing index.
fn simple_by_planarization(state: &DrawingState) -> bool {
    common_points(state).iter().all(|(&(e, f), &c)| e != f && c <= 1)
}

fn lens_pairs(state: &DrawingState) -> BTreeSet<(usize, usize)> {
    oracle_lenses(state).expect("oracle").iter().map(|k| k.edges).collect()
}

/// Brute-force intersection count of two polylines over exact rationals,
/// excluding the edges' own endpoints.
fn brute_force_pairs(gd: &GeometricDrawing) -> Pairs {
    type P = (BigRational, BigRational);
    let pts: Vec<Vec<P>> = gd
        .edges
        .iter()
        .map(|e| e.polyline.iter().map(|p| (p.x.clone(), p.y.clone())).collect())
        .collect();
    let bbox: Vec<[BigRational; 4]> = pts
        .iter()
        .map(|line| {
            let xs = line.iter().map(|p| &p.0);
            let ys = line.iter().map(|p| &p.1);
            [
                xs.clone().min().unwrap().clone(),
                xs.max().unwrap().clone(),
                ys.clone().min().unwrap().clone(),
                ys.max().unwrap().clone(),
            ]
        })
        .collect();
    let cross = |a: &P, b: &P| &a.0 * &b.1 - &a.1 * &b.0;
    let sub = |a: &P, b: &P| (&a.0 - &b.0, &a.1 - &b.1);
    let hit = |p0: &P, p1: &P, q0: &P, q1: &P| -> Option<P> {
        let (r, s) = (sub(p1, p0), sub(q1, q0));
        let den = cross(&r, &s);
        if den.is_zero() {
            return None;
        }
        let qp = sub(q0, p0);
        let t = cross(&qp, &s) / &den;
        let u = cross(&qp, &r) / &den;
        let unit = |x: &BigRational| !(x < &BigRational::zero() || x > &BigRational::from_integer(1.into()));
        (unit(&t) && unit(&u)).then(|| (&p0.0 + &t * &r.0, &p0.1 + &t * &r.1))
    };
    let mut out = Pairs::new();
    for e in 0..pts.len() {
        for f in e + 1..pts.len() {
            let (a, b) = (&bbox[e], &bbox[f]);
            if a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2] {
                continue;
            }
            let ends = [&pts[e][0], pts[e].last().unwrap(), &pts[f][0], pts[f].last().unwrap()];
            let mut found: BTreeSet<P> = BTreeSet::new();
            for s in pts[e].windows(2) {
                for t in pts[f].windows(2) {
                    if let Some(p) = hit(&s[0], &s[1], &t[0], &t[1]) {
                        if !ends.contains(&&p) {
                            found.insert(p);
                        }
                    }
                }
            }
            if !found.is_empty() {
                out.insert((e, f), found.len());
            }
        }
    }
    out
}

fn ingested_pairs(gd: &GeometricDrawing) -> Pairs {
    let net = ingest_geometric(gd).expect("ingest");
    let mut out = Pairs::new();
    for node in &net.nodes {
        if let NodeKind::Crossing(e, f) = *node {
            *out.entry((e.min(f), e.max(f))).or_default() += 1;
        }
    }
    out
}

/// `find_lens` must return an oracle lens for every pair with at least two
/// common points and nothing for the other pairs it is asked about.
fn check_find_lens(c: &mut Criterion, state: &DrawingState, tag: &str) {
    let oracle = oracle_lenses(state).expect("oracle");
    let mut index = CrossingIndex::new(state);
    for (&(e, f), &count) in &common_points(state) {
        if e == f {
            continue;
        }
        let found = find_lens(state, &mut index, e, f);
        if count >= 2 {
            c.check(found.is_some_and(|l| oracle.contains(&LensKey::of(&l))), || {
                format!("{tag}: pair ({e}, {f}) with {count} common points: {found:?}")
            });
        } else {
            c.check(found.is_none(), || format!("{tag}: pair ({e}, {f}) has one common point but a lens"));
        }
    }
}

fn check_ingestion(c: &mut Criterion, gd: &GeometricDrawing, tag: &str) {
    let (ours, brute) = (ingested_pairs(gd), brute_force_pairs(gd));
    c.check(ours == brute, || format!("{tag}: ingested {ours:?} vs brute force {brute:?}"));
}

/// Criteria 1, 2, 4, 7 and 9 over random k-plane drawings.
fn suite_general(c1: &mut Criterion, c2: &mut Criterion, c4: &mut Criterion, c7: &mut Criterion, c9: &mut Criterion) {
    let (mut done, mut seed, mut gen_failures) = (0, 0u64, 0);
    let mut algorithm_time = Duration::ZERO;
    let started = Instant::now();
    while done < 1000 {
        let i = seed as usize;
        seed += 1;
        let k = 1 + i % 6;
        let n = 10 + (i * 7919) % 91;
        let m = n * 3 / 2 + i % (n / 2 + 1);
        let Ok(gd) = gen_random_kplane(&GenConfig::new(n, m, k, seed)) else {
            gen_failures += 1;
            continue;
        };
        done += 1;
        let tag = format!("seed {seed} n {n} m {m} k {k}");
        check_ingestion(c7, &gd, &tag);
        let state = state_of(&gd);
        check_find_lens(c7, &state, &tag);
        c4.check(state.routes().iter().all(|r| r.nodes.len() <= k + 2), || format!("{tag}: an input edge is longer than k + 1"));

        let run = Instant::now();
        let result = algorithm1(state, k);
        algorithm_time += run.elapsed();
        let (out, trace) = match result {
            Ok(r) => r,
            Err(err) => {
                c1.check(false, || format!("{tag}: {err}"));
                continue;
            }
        };
        c1.check(simple_by_planarization(&out), || format!("{tag}: output not simple"));
        c1.check(oracle_lenses(&out).expect("oracle").is_empty(), || format!("{tag}: oracle finds a lens"));
        c1.check(is_simple(&out), || format!("{tag}: is_simple is false"));

        let max_x = crossings_per_edge(&out).into_iter().max().unwrap_or(0);
        let ceiling = f_bound(k).expect("k >= 1");
        c2.check(max_x as f64 <= ceiling, || format!("{tag}: {max_x} crossings > {ceiling}"));

        for (j, s) in trace.steps.iter().enumerate() {
            c4.check(
                (s.total_length_after, s.total_crossings_after) < (s.total_length_before, s.total_crossings_before),
                || format!("{tag} step {j}: measure did not decrease: {s:?}"),
            );
            c4.check(s.f_length_after <= k + 1, || format!("{tag} step {j}: length {} > k + 1", s.f_length_after));
        }
        c4.check((0..out.edge_count()).all(|e| out.length(e) <= k + 1), || format!("{tag}: an output edge is longer than k + 1"));

        let bound = 4 * 3usize.pow(k as u32 - 1);
        let net = out.network();
        let mut through: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (e, route) in out.routes().iter().enumerate() {
            for &node in &route.nodes[route.internal_visits()] {
                if matches!(net.nodes[node], NodeKind::Crossing(..)) {
                    through.entry(node).or_default().insert(e);
                }
            }
        }
        for (node, edges) in through {
            let n_gamma = edges.iter().flat_map(|&e| net.graph.edges[e]).collect::<BTreeSet<_>>().len();
            c9.check(n_gamma <= bound, || format!("{tag}: node {node} has n_gamma {n_gamma} > {bound}"));
        }
        let report = neighborhood_diagnostics(&out, k).expect("k >= 1");
        c9.check(report.all_within_vertex_bound(), || format!("{tag}: library diagnostics disagree"));
    }
    c1.note(format!(
        "{done} drawings, {gen_failures} generator retries, Algorithm 1 time {algorithm_time:.1?}, suite with oracles {:.1?}",
        started.elapsed()
    ));
    c2.note(format!("f_bound(4) = {:.2}", f_bound(4).unwrap()));
    let f4 = f_bound(4).unwrap();
    c2.check((f4 - 3290.01).abs() <= 0.01, || format!("f_bound(4) = {f4}"));
}

struct Sample {
    n: usize,
    iterations: usize,
}

/// Criteria 3, 5 and 7 over random 4-plane drawings.
fn suite_four(c3: &mut Criterion, c5: &mut Criterion, c7: &mut Criterion) -> Vec<Sample> {
    let mut samples = Vec::new();
    let (mut seed, mut gen_failures) = (0u64, 0);
    while samples.len() < 1000 {
        let i = seed as usize;
        seed += 1;
        let n = 20 + (i * 7919) % 181;
        let m = 2 * n - i % (n / 2);
        let Ok(gd) = gen_random_kplane(&GenConfig::new(n, m, 4, seed + 1_000_000)) else {
            gen_failures += 1;
            continue;
        };
        let tag = format!("seed {seed} n {n} m {m}");
        let state = state_of(&gd);
        check_find_lens(c7, &state, &tag);

        let (d1, steps1) = match phase1(state.clone()) {
            Ok(r) => r,
            Err(err) => {
                c5.check(false, || format!("{tag}: phase 1: {err}"));
                continue;
            }
        };
        check_find_lens(c7, &d1, &format!("{tag} after phase 1"));
        let x1 = crossings_per_edge(&d1).into_iter().max().unwrap_or(0);
        c5.check(x1 <= 4, || format!("{tag}: {x1} crossings after phase 1"));
        let common = common_points(&d1);
        c5.check(common.values().all(|&c| c <= 2), || format!("{tag}: a pair has 3 common points after phase 1"));
        let mut index = CrossingIndex::new(&d1);
        for (&(e, f), &count) in &common {
            if count < 2 || e == f {
                continue;
            }
            for lens in all_lenses_of_pair(&d1, &mut index, e, f) {
                let class = classify_lens(&d1, &mut index, &lens.oriented_by_crossings());
                c5.check(matches!(class, Ok(LensClass::OneThree)), || {
                    format!("{tag}: {class:?} lens on ({e}, {f}) after phase 1")
                });
            }
        }

        let (d2, steps2, log) = match replanarize(&d1).and_then(phase2) {
            Ok(r) => r,
            Err(err) => {
                c5.check(false, || format!("{tag}: phase 2: {err}"));
                continue;
            }
        };
        let report = phase2_report(&d2, &log);
        c5.check(report.holds(), || format!("{tag}: after phase 2 {report:?}"));
        let x2 = crossings_per_edge(&d2).into_iter().max().unwrap_or(0);
        c5.check(x2 <= 8, || format!("{tag}: {x2} crossings after phase 2"));

        let (d3, steps3) = match phase3(d2) {
            Ok(r) => r,
            Err(err) => {
                c5.check(false, || format!("{tag}: phase 3: {err}"));
                continue;
            }
        };
        c5.check(oracle_lenses(&d3).expect("oracle").is_empty(), || format!("{tag}: lens after phase 3"));

        c3.check(simple_by_planarization(&d3), || format!("{tag}: output not simple"));
        let x3 = crossings_per_edge(&d3).into_iter().max().unwrap_or(0);
        c3.check(x3 <= 8, || format!("{tag}: {x3} crossings in the output"));
        if samples.len() < 50 {
            let same = algorithm2(state).is_ok_and(|(out, _)| out.routes() == d3.routes() && out.corridors() == d3.corridors());
            c3.check(same, || format!("{tag}: algorithm2 differs from its phases"));
        }
        samples.push(Sample {
            n,
            iterations: steps1.len() + steps2.len() + steps3.len(),
        });
    }
    c3.note(format!("{} drawings, {gen_failures} generator retries", samples.len()));
    samples
}

/// Iterations are bounded by `c * n` with `c` fitted on the smaller half of
/// the suite and checked on the larger half.
fn check_operation_count(c3: &mut Criterion, samples: &[Sample]) {
    let ratio = |s: &Sample| s.iterations as f64 / s.n as f64;
    let fitted = samples.iter().filter(|s| s.n <= 100).map(ratio).fold(0.0, f64::max);
    let overall = samples.iter().map(ratio).fold(0.0, f64::max);
    for s in samples.iter().filter(|s| s.n > 100) {
        c3.check(s.iterations as f64 <= fitted * s.n as f64, || {
            format!("n {}: {} iterations > {fitted:.3} * n", s.n, s.iterations)
        });
    }
    c3.note(format!("iterations <= c*n with fitted c = {fitted:.3} (max over all {overall:.3})"));
}

/// Median over seeds of the best of three runs of Algorithm 2.
fn wall_time(n: usize) -> Duration {
    let mut times: Vec<Duration> = (0..5u64)
        .filter_map(|seed| gen_random_kplane(&GenConfig::new(n, 2 * n, 4, 7_000 + seed)).ok())
        .map(|gd| {
            let state = state_of(&gd);
            (0..3)
                .map(|_| {
                    let start = Instant::now();
                    algorithm2(state.clone()).expect("4-plane input");
                    start.elapsed()
                })
                .min()
                .unwrap()
        })
        .collect();
    times.sort();
    times[times.len() / 2]
}

/// Allows a factor 2.5 per doubling of `n`, so that a logarithmic factor or
/// timer noise does not fail an otherwise linear run.
fn check_scaling(c3: &mut Criterion) {
    let sizes = [50, 100, 200, 400];
    let times: Vec<Duration> = sizes.iter().map(|&n| wall_time(n)).collect();
    let growth = times[3].as_secs_f64() / times[0].as_secs_f64().max(1e-9);
    c3.check(growth <= 2.5f64.powi(3), || format!("time grew {growth:.1}x from n = 50 to n = 400"));
    let shown: Vec<String> = sizes.iter().zip(&times).map(|(n, t)| format!("n={n}: {t:.2?}")).collect();
    c3.note(format!("wall time {} (growth {growth:.1}x for 8x n)", shown.join(", ")));
}

/// Criterion 6 on small random drawings of mixed k.
fn suite_operations(c6: &mut Criterion) {
    let (mut swaps, mut exact, mut looped, mut zero, mut quasi, mut lens_checked) = (0, 0, 0, 0, 0, 0);
    for seed in 0..1500u64 {
        let k = 2 + (seed % 5) as usize;
        let Ok(gd) = gen_random_kplane(&GenConfig::new(20, 40, k, seed + 2_000_000)) else {
            continue;
        };
        let state = state_of(&gd);
        let before = common_points(&state);
        let at_most_two = before.values().all(|&c| c <= 2);
        let lenses_before = lens_pairs(&state);
        let mut index = CrossingIndex::new(&state);
        let total = index.total_crossings();
        for cl in enumerate_lenses(&state, &mut index) {
            let lens = cl.lens;
            let tag = format!("seed {seed} lens ({}, {})", lens.e, lens.f);

            let mut s = state.clone();
            let mut ix = CrossingIndex::new(&s);
            let (xe, xf) = (ix.x(&s, lens.e), ix.x(&s, lens.f));
            match swap(&mut s, &mut ix, &lens) {
                Ok(_) => {
                    swaps += 1;
                    let after = ix.total_crossings();
                    c6.check(after < total, || format!("{tag}: swap took total {total} to {after}"));
                    if lens.kind == BoundaryKind::Independent {
                        exact += 1;
                        let (ye, yf) = (crossings_per_edge(&s)[lens.e], crossings_per_edge(&s)[lens.f]);
                        let want_e = (xe + lens.x_f_arc) as isize - 2 - lens.x_e_arc as isize;
                        let want_f = (xf + lens.x_e_arc) as isize - 2 - lens.x_f_arc as isize;
                        // Loop removal after the exchange can only lower the
                        // counts, and loops need a third common point.
                        let loop_free = before[&lens.pair()] == 2;
                        let ok = if loop_free {
                            ye as isize == want_e && yf as isize == want_f
                        } else {
                            looped += 1;
                            ye as isize <= want_e && yf as isize <= want_f
                        };
                        c6.check(ok, || {
                            format!("{tag}: swap gave x(e') {ye}, x(f') {yf}; expected {want_e}, {want_f} (loop free: {loop_free})")
                        });
                    }
                }
                Err(err) => c6.check(false, || format!("{tag}: swap failed: {err}")),
            }

            let mut s = state.clone();
            let mut ix = CrossingIndex::new(&s);
            let applied = match cl.class {
                LensClass::Zero => {
                    zero += 1;
                    reroute(&mut s, &mut ix, &lens).map(|_| ())
                }
                LensClass::QuasiZero(w) => {
                    quasi += 1;
                    quasi_zero_reroute(&mut s, &mut ix, &lens, &w).map(|_| ())
                }
                _ => continue,
            };
            if let Err(err) = applied {
                c6.check(false, || format!("{tag}: {:?} reroute failed: {err}", cl.class));
                continue;
            }
            let after = common_points(&s);
            let grown: Vec<_> = after
                .iter()
                .filter(|(pair, &c)| c > before.get(pair).copied().unwrap_or(0))
                .collect();
            c6.check(grown.is_empty(), || format!("{tag}: {:?} reroute raised pair counts {grown:?}", cl.class));
            if at_most_two {
                lens_checked += 1;
                let lenses_after = lens_pairs(&s);
                c6.check(lenses_after.is_subset(&lenses_before), || {
                    format!("{tag}: {:?} reroute: lens pairs {lenses_before:?} became {lenses_after:?}", cl.class)
                });
            }
        }
    }
    c6.check(lens_checked >= 500, || format!("only {lens_checked} reroutes on drawings with <= 2 common points"));
    c6.note(format!(
        "{swaps} swaps ({exact} independent, {looped} of them with a third common point), {zero} 0-lens and {quasi} quasi-0 reroutes, {lens_checked} oracle lens comparisons"
    ));
}

/// Criterion 8: committed golden traces and the two-segment reroute.
fn fixtures(c8: &mut Criterion) {
    for name in ["f1", "f2", "f3", "f4"] {
        let path = common::fixture_path(&format!("golden/{name}.json"));
        let committed = std::fs::read(&path).unwrap_or_default();
        c8.check(committed == common::golden_trace(name), || format!("{} differs", path.display()));
        let again = common::golden_trace(name);
        c8.check(again == common::golden_trace(name), || format!("{name}: trace is not deterministic"));
    }
    let mut s = common::state_of(&common::detour());
    let mut index = CrossingIndex::new(&s);
    let before = (s.length(1), index.x(&s, 1));
    let lens = find_lens(&s, &mut index, 0, 1).expect("lens").oriented_by_crossings();
    reroute(&mut s, &mut index, &lens).expect("reroute");
    let after = (s.length(1), crossings_per_edge(&s)[1]);
    c8.check(before == (3, 2) && after == (3, 1), || format!("(length, crossings) {before:?} -> {after:?}"));
    c8.note(format!("two-segment reroute: (length, crossings) {before:?} -> {after:?}"));
}

fn main() {
    let mut c = [
        Criterion::new("simplicity of Algorithm 1"),
        Criterion::new("f(k) ceiling"),
        Criterion::new("8-plane output of Algorithm 2"),
        Criterion::new("termination measure and length bound"),
        Criterion::new("phase properties"),
        Criterion::new("operation contracts"),
        Criterion::new("oracle equivalence"),
        Criterion::new("fixtures"),
        Criterion::new("neighbourhood diagnostics"),
    ];
    let [c1, c2, c3, c4, c5, c6, c7, c8, c9] = &mut c;
    let started = Instant::now();
    suite_general(c1, c2, c4, c7, c9);
    let samples = suite_four(c3, c5, c7);
    check_operation_count(c3, &samples);
    check_scaling(c3);
    suite_operations(c6);
    fixtures(c8);
    for (i, criterion) in c.iter().enumerate() {
        criterion.print(i + 1);
    }
    println!("acceptance finished in {:.1?}", started.elapsed());
    if !c.iter().all(Criterion::passed) {
        std::process::exit(1);
    }
}
