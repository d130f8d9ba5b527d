use bpr_coloring::{Color, ColoringError, EdgeColoring};
use bpr_graph::{Edge, Graph, Kite};

#[test]
fn extend_examples() {
    let e = Edge(0, 1);
    let mut c = EdgeColoring::new();
    c.extend(e, Color::Black).unwrap();
    assert_eq!(c.get(e), Some(Color::Black));

    let mut c = EdgeColoring::new();
    c.extend(e, Color::Blue).unwrap();
    c.extend(e, Color::Black).unwrap();
    assert_eq!(c.get(e), Some(Color::Blue));

    let mut c = EdgeColoring::new();
    c.extend(e, Color::Black).unwrap();
    assert_eq!(
        c.extend(e, Color::Blue),
        Err(ColoringError::Conflict { edge: e, existing: Color::Black, requested: Color::Blue })
    );
}

#[test]
fn blue_and_cyan_never_change() {
    for keep in [Color::Blue, Color::Cyan] {
        for req in Color::ALL {
            let mut c = EdgeColoring::new();
            c.extend(Edge(2, 5), keep).unwrap();
            let _ = c.extend(Edge(2, 5), req);
            assert_eq!(c.get(Edge(2, 5)), Some(keep));
        }
    }
}

#[test]
fn only_listed_disagreements_are_allowed() {
    for old in Color::ALL {
        for new in Color::ALL {
            let mut c = EdgeColoring::new();
            c.extend(Edge(0, 1), old).unwrap();
            let ok = c.extend(Edge(0, 1), new).is_ok();
            let expect = old == new
                || (matches!(old, Color::Blue | Color::Cyan) && matches!(new, Color::Black | Color::Grey));
            assert_eq!(ok, expect, "{old} <- {new}");
        }
    }
}

#[test]
fn color_kite_examples() {
    let kite = Kite::new(0, Edge(0, 2), Edge(1, 3));
    let mut c = EdgeColoring::new();
    c.color_kite(&kite).unwrap();
    assert_eq!(c.edges_with(Color::Red), vec![Edge(0, 2)]);
    assert_eq!(c.edges_with(Color::Blue), vec![Edge(1, 3)]);
    assert_eq!(c.edges_with(Color::Black).len(), 4);

    let mut c = EdgeColoring::new();
    c.extend(Edge(0, 1), Color::Cyan).unwrap();
    c.color_kite(&kite).unwrap();
    assert_eq!(c.get(Edge(0, 1)), Some(Color::Cyan));

    let mut c = EdgeColoring::new();
    c.extend(Edge(0, 2), Color::Black).unwrap();
    assert!(c.color_kite(&kite).is_err());
}

#[test]
fn crossable_edges_respect_colors() {
    let k5 = Graph::complete(5);
    let mut c = EdgeColoring::new();
    assert_eq!(c.crossable_edges(&k5, Edge(0, 1)).unwrap(), vec![Edge(2, 3), Edge(2, 4), Edge(3, 4)]);
    c.extend(Edge(2, 3), Color::Black).unwrap();
    assert_eq!(c.crossable_edges(&k5, Edge(0, 1)).unwrap(), vec![Edge(2, 4), Edge(3, 4)]);
    assert_eq!(c.crossable_edges(&k5, Edge(2, 3)), Err(ColoringError::Colored(Edge(2, 3))));
}

#[test]
fn named_map_serializes_edges_as_strings() {
    let mut c = EdgeColoring::new();
    c.extend(Edge(1, 4), Color::Orange).unwrap();
    let m = c.to_named_map();
    assert_eq!(m.get("1-4").map(String::as_str), Some("orange"));
}

#[test]
fn json_round_trip() {
    let mut c = EdgeColoring::new();
    c.extend(Edge(1, 4), Color::Orange).unwrap();
    c.extend(Edge(0, 2), Color::Grey).unwrap();
    let s = serde_json::to_string(&c).unwrap();
    assert_eq!(s, r#"{"0-2":"grey","1-4":"orange"}"#);
    let back: EdgeColoring = serde_json::from_str(&s).unwrap();
    assert_eq!(back, c);
}
