#![allow(dead_code)]

use kplane::algo::{algorithm1, algorithm2};
use kplane::io::{ingest_geometric, GeometricDrawing};
use kplane::model::{is_simple, measures, DrawingState};
use serde_json::json;

pub fn f1() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[(0, 0), (10, 0), (2, 3), (8, 3)],
        &[(0, 1, vec![]), (2, 3, vec![(3, -1), (7, -1)])],
    )
}

pub fn f2() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[(0, 0), (10, 0), (9, 2)],
        &[(0, 1, vec![]), (0, 2, vec![(5, -1), (6, 1)])],
    )
}

pub fn f3() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[(0, 0), (10, 0), (2, 3), (8, 3), (5, 2), (5, -2)],
        &[(0, 1, vec![]), (2, 3, vec![(3, -1), (7, -1)]), (4, 5, vec![])],
    )
}

pub fn state_of(gd: &GeometricDrawing) -> DrawingState {
    DrawingState::initial(ingest_geometric(gd).expect("fixture ingests")).expect("valid network")
}

/// Edge 0 and edge 1 share vertex 0 and bound a lens crossed once along
/// edge 0 and three times along edge 1; both have four crossings.
pub fn f4() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[
            (0, 0),
            (80, 0),
            (48, 16),
            (4, 4),
            (4, -1),
            (8, -2),
            (8, -6),
            (12, -4),
            (12, -8),
            (16, -6),
            (16, -10),
            (56, 4),
            (56, -4),
            (64, 4),
            (64, -4),
        ],
        &[
            (0, 1, vec![]),
            (0, 2, vec![(24, -12), (32, 8)]),
            (3, 4, vec![]),
            (5, 6, vec![]),
            (7, 8, vec![]),
            (9, 10, vec![]),
            (11, 12, vec![]),
            (13, 14, vec![]),
        ],
    )
}

/// Adjacent lens whose arc along edge 0 is crossed by edge 3 and whose arc
/// along edge 1 is crossed by edge 2.
pub fn detour() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[(0, 0), (40, 0), (28, 12), (6, -2), (6, -6), (8, 2), (8, -1)],
        &[
            (0, 1, vec![]),
            (0, 2, vec![(12, -8), (20, 8)]),
            (3, 4, vec![]),
            (5, 6, vec![]),
        ],
    )
}

/// Quasi-0 lens: edge 3 shares vertex 2 with edge 1 and crosses the lens
/// arc of edge 0.
pub fn f5() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[(0, 0), (40, 0), (4, 12), (28, 12), (16, -3), (16, -9), (20, -4)],
        &[
            (0, 1, vec![]),
            (2, 3, vec![(10, -6), (22, -6)]),
            (4, 5, vec![]),
            (2, 6, vec![]),
        ],
    )
}

/// Two 1-3-lenses at vertex 0: edges 0 and 1, and edges 1 and 4. The arc of
/// edge 1 in the second lies inside its arc in the first.
pub fn skip() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[
            (0, 0),
            (80, 0),
            (48, 16),
            (4, 4),
            (4, -1),
            (8, -2),
            (8, -6),
            (12, -3),
            (16, -6),
            (16, -10),
            (56, 4),
            (56, -4),
            (64, 4),
            (64, -4),
            (2, -10),
            (2, -14),
            (6, -10),
            (6, -14),
            (10, -10),
            (10, -14),
        ],
        &[
            (0, 1, vec![]),
            (0, 2, vec![(24, -12), (32, 8)]),
            (3, 4, vec![]),
            (5, 6, vec![]),
            (0, 7, vec![(-2, -12), (16, -12)]),
            (8, 9, vec![]),
            (10, 11, vec![]),
            (12, 13, vec![]),
            (14, 15, vec![]),
            (16, 17, vec![]),
            (18, 19, vec![]),
        ],
    )
}

/// Edge 0 is the long arc of a 1-3-lens with edge 2 at vertex 0 and the
/// short arc of a 1-3-lens with edge 1 at vertex 1.
pub fn interlock() -> GeometricDrawing {
    GeometricDrawing::from_integer_coords(
        &[
            (0, 0),
            (40, 0),
            (32, -10),
            (20, 6),
            (14, 16),
            (14, 11),
            (5, 3),
            (5, -3),
            (10, 3),
            (10, -3),
            (29, -4),
            (36, -4),
            (29, -8),
            (36, -8),
            (36, -18),
            (36, -22),
            (30, -18),
            (30, -22),
            (24, -18),
            (24, -22),
        ],
        &[
            (0, 1, vec![]),
            (1, 3, vec![(42, -20), (20, -20)]),
            (0, 2, vec![(2, 14), (28, 14)]),
            (4, 5, vec![]),
            (6, 7, vec![]),
            (8, 9, vec![]),
            (10, 11, vec![]),
            (12, 13, vec![]),
            (14, 15, vec![]),
            (16, 17, vec![]),
            (18, 19, vec![]),
        ],
    )
}

pub fn named() -> Vec<(&'static str, GeometricDrawing)> {
    vec![
        ("f1", f1()),
        ("f2", f2()),
        ("f3", f3()),
        ("f4", f4()),
        ("f5", f5()),
        ("detour", detour()),
        ("skip", skip()),
        ("interlock", interlock()),
    ]
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

/// Compares `bytes` with the committed file, or rewrites the file when
/// `UPDATE_GOLDEN` is set.
pub fn check_file(name: &str, bytes: &[u8]) {
    let path = fixture_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, bytes).unwrap();
        return;
    }
    let committed = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}; rerun with UPDATE_GOLDEN=1", path.display()));
    assert!(
        committed == bytes,
        "{} differs from the current output; rerun with UPDATE_GOLDEN=1 if the change is intended",
        path.display()
    );
}

/// Both algorithms on fixture `name`, as the pretty JSON committed under
/// `golden/`. The default `k` is the fixture's own maximum crossing count.
pub fn golden_trace(name: &str) -> Vec<u8> {
    let gd = named().into_iter().find(|(n, _)| *n == name).expect("known fixture").1;
    let state = state_of(&gd);
    let k = measures(&state).max_crossings().max(1);
    let (out1, trace1) = algorithm1(state.clone(), k).unwrap();
    let (out2, trace2) = algorithm2(state).unwrap();
    assert!(is_simple(&out1) && is_simple(&out2), "{name}");
    let value = json!({
        "fixture": name,
        "k": k,
        "algorithm1": trace1,
        "algorithm1_crossings": measures(&out1).crossings,
        "algorithm2": trace2,
        "algorithm2_crossings": measures(&out2).crossings,
    });
    let mut bytes = serde_json::to_vec_pretty(&value).unwrap();
    bytes.push(b'\n');
    bytes
}
