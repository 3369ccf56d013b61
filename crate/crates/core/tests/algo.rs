mod common;

use kplane::algo::{algorithm1, algorithm2, f_bound, neighborhood_diagnostics, phase1, phase2, phase2_report, phase3, replanarize};
use kplane::gen::{gen_random_kplane, GenConfig};
use kplane::io::ingest_geometric;
use kplane::lens::{oracle_lenses, LensClass};
use kplane::model::{is_simple, measures, validate_state, CrossingIndex, DrawingState};

fn random_state(n: usize, m: usize, k: usize, seed: u64) -> DrawingState {
    let gd = gen_random_kplane(&GenConfig::new(n, m, k, seed)).unwrap();
    DrawingState::initial(ingest_geometric(&gd).unwrap()).unwrap()
}

#[test]
fn algorithm1_on_random_drawings() {
    for k in 1..=6 {
        for seed in 0..15 {
            let state = random_state(20, 40, k, seed);
            let (out, trace) = algorithm1(state, k).unwrap_or_else(|e| panic!("k {k} seed {seed}: {e}"));
            assert!(validate_state(&out).passed(), "k {k} seed {seed}");
            assert!(is_simple(&out), "k {k} seed {seed}");
            assert!(oracle_lenses(&out).unwrap().is_empty());
            for s in &trace.steps {
                assert!(
                    (s.total_length_after, s.total_crossings_after) < (s.total_length_before, s.total_crossings_before),
                    "k {k} seed {seed}: {s:?}"
                );
                assert!(s.f_length_after <= k + 1);
            }
            assert!(measures(&out).max_crossings() as f64 <= f_bound(k).unwrap());
            assert!(neighborhood_diagnostics(&out, k).unwrap().all_within_vertex_bound());
        }
    }
}

#[test]
fn algorithm2_phases_on_random_drawings() {
    for seed in 0..40 {
        let state = random_state(24, 50, 4, seed);
        let (d1, steps1) = phase1(state.clone()).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(validate_state(&d1).passed());
        let mut index = CrossingIndex::new(&d1);
        assert!(index.max_x(&d1).0 <= 4, "seed {seed}");
        let _ = steps1;
        let n1 = replanarize(&d1).unwrap();
        let (d2, _, log) = phase2(n1).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(validate_state(&d2).passed());
        let report = phase2_report(&d2, &log);
        assert!(report.holds(), "seed {seed}: {report:?}");
        let (d3, _) = phase3(d2).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(is_simple(&d3), "seed {seed}");
        assert!(measures(&d3).max_crossings() <= 8);
        let (out, _) = algorithm2(state).unwrap();
        assert!(is_simple(&out));
        let _ = LensClass::Zero;
    }
}
