use floatgeo::schema::{CurveDoc, FlotationDoc, PolytopeDoc};
use floatgeo_core::directions::{circle_directions, fibonacci_directions};
use floatgeo_core::{build_polytope, decompose_flotation_2d, sample_flotation, Dim};

fn pentagon() -> floatgeo_core::Polytope {
    let v = vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![2.5, 1.5], vec![1.0, 2.4], vec![-0.3, 1.2]];
    build_polytope(&v, 2).unwrap()
}

#[test]
fn polytope_round_trip() {
    let p = pentagon().with_density(0.3).unwrap();
    let doc = PolytopeDoc::from_polytope(&p);
    let text = serde_json::to_string(&doc).unwrap();
    let back: PolytopeDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back, doc);
    let q = back.to_polytope(1e-9).unwrap();
    assert_eq!(q.vertices(), p.vertices());
    assert_eq!(q.density(), Some(0.3));
}

#[test]
fn point_cloud_is_canonicalized() {
    let doc: PolytopeDoc =
        serde_json::from_str(r#"{"dim":2,"vertices":[[1,1],[0,0],[0.5,0.5],[1,0],[0,1],[0.2,0.7]]}"#).unwrap();
    let p = doc.to_polytope(1e-9).unwrap();
    let out = PolytopeDoc::from_polytope(&p);
    assert_eq!(out.vertices, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]);
}

#[test]
fn curve_round_trip_is_exact() {
    let dec = decompose_flotation_2d(&pentagon(), 0.3).unwrap();
    let doc = CurveDoc::from_decomposition(&dec);
    let text = serde_json::to_string_pretty(&doc).unwrap();
    let back: CurveDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.to_curve(), dec.curve);
}

#[test]
fn flotation_round_trip_is_exact() {
    let cube = build_polytope(
        &(0..8)
            .map(|i| vec![(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64])
            .collect::<Vec<_>>(),
        3,
    )
    .unwrap();
    let samples = sample_flotation(&cube, 0.3, &fibonacci_directions(50)).unwrap();
    let doc = FlotationDoc::new(Dim::Three, 0.3, &samples);
    let back: FlotationDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(back, doc);
    let planar = sample_flotation(&pentagon(), 0.3, &circle_directions(16)).unwrap();
    let doc = FlotationDoc::new(Dim::Two, 0.3, &planar);
    let pts = doc.curve_points().unwrap();
    for (a, b) in pts.iter().zip(&planar) {
        assert_eq!(a.contact, b.contact);
        assert_eq!(a.h, b.h);
    }
}

#[test]
fn csv_numbers_parse_back_exactly() {
    for x in [0.1, 1.0 / 3.0, 6.123233995736766e-17, -2.5e300, 0.0] {
        let s = floatgeo::table::num(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
