use std::io::BufReader;

use polydome::{
    build_slab_stack, read_obj, read_stl, slab_stack_mesh, solid_volume, tessellate, write_obj,
    write_stl, MeshResolution, SolidSpec, TriangleMesh64,
};
use proptest::prelude::*;

fn dome(n: usize, r: f64, segs: usize, rings: usize) -> TriangleMesh64 {
    let s = SolidSpec::new(n, r).unwrap();
    tessellate(&s, MeshResolution::new(segs, rings).unwrap()).unwrap()
}

fn assert_closed(m: &TriangleMesh64) {
    assert!(m.is_watertight(), "defects: {:?}", &m.edge_defects()[..1]);
    assert_eq!(m.topology().euler_characteristic, 2);
    assert!(m.signed_volume() > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dome_is_closed_at_any_resolution(
        n in 3usize..16, r in 0.1f64..10.0, segs in 1usize..6, rings in 1usize..8,
    ) {
        let m = dome(n, r, segs, rings);
        prop_assert_eq!(m.dropped_degenerate, 0);
        prop_assert!(m.is_watertight());
        let topo = m.topology();
        prop_assert_eq!(topo.euler_characteristic, 2);
        prop_assert_eq!(topo.vertices, n * segs * rings + 2);
        prop_assert_eq!(topo.faces, 2 * n * segs * rings);
        prop_assert!(m.signed_volume() > 0.0);
    }

    #[test]
    fn dome_vertices_on_surface(n in 3usize..16, r in 0.1f64..10.0, segs in 1usize..6, rings in 1usize..8) {
        let s = SolidSpec::new(n, r).unwrap();
        let m = tessellate(&s, MeshResolution::new(segs, rings).unwrap()).unwrap();
        for v in &m.vertices[..m.vertices.len() - 1] {
            let rho = v[0].hypot(v[1]);
            let a = s.scaling_factor(v[1].atan2(v[0])).unwrap();
            let lhs = (rho * a / r).powi(2) + (v[2] / r).powi(2);
            prop_assert!((lhs - 1.0).abs() < 1e-12, "{:?}", v);
        }
    }

    #[test]
    fn slab_stack_is_closed(n in 3usize..12, r in 0.1f64..10.0, m in 1usize..40) {
        let s = SolidSpec::new(n, r).unwrap();
        let st = build_slab_stack(m, &s).unwrap();
        let mesh = slab_stack_mesh(&st, &s);
        prop_assert!(mesh.is_watertight());
        prop_assert_eq!(mesh.topology().euler_characteristic, 2);
        let v = mesh.signed_volume();
        prop_assert!((v - st.total_volume()).abs() <= 1e-9 * st.total_volume());
    }
}

#[test]
fn dome_vertices_match_surface_points() {
    let s = SolidSpec::new(6, 2.0).unwrap();
    let (segs, rings) = (3, 4);
    let m = tessellate(&s, MeshResolution::new(segs, rings).unwrap()).unwrap();
    let dom = s.domain();
    let cols = 6 * segs;
    for k in 0..rings {
        let t = k as f64 * std::f64::consts::FRAC_PI_2 / rings as f64;
        for j in 0..cols {
            let r = dom.lo + j as f64 * dom.sector_width / segs as f64;
            let want = s.surface_point(r, t).unwrap();
            let got = m.vertices[k * cols + j];
            for c in 0..3 {
                assert!((want[c] - got[c]).abs() < 1e-12);
            }
        }
    }
    assert_eq!(m.vertices[rings * cols], [0.0, 0.0, 2.0]);
}

#[test]
fn every_base_triangle_faces_down() {
    for n in [3, 4, 7] {
        let m = dome(n, 1.0, 4, 4);
        let base: Vec<_> = m
            .triangles
            .iter()
            .filter(|&&t| m.triangle_points(t).iter().all(|p| p[2] == 0.0))
            .collect();
        assert_eq!(base.len(), 4 * n);
        assert!(base.iter().all(|&&t| m.triangle_normal(t)[2] < 0.0));
    }
}

#[test]
fn volume_converges_at_second_order() {
    for n in [3, 4, 5, 12] {
        let s = SolidSpec::new(n, 1.0).unwrap();
        let exact = solid_volume(&s);
        let errs: Vec<f64> = [8, 16, 32, 64]
            .iter()
            .map(|&k| (exact - dome(n, 1.0, k, k).signed_volume()).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] < w[0]);
            let ratio = w[0] / w[1];
            assert!((3.0..=5.0).contains(&ratio), "n={n} ratio {ratio}");
        }
        assert!(errs[3] / exact < 0.005);
    }
}

#[test]
fn stl_size_and_round_trip() {
    let m = dome(5, 1.3, 6, 6);
    let mut buf = Vec::new();
    let written = write_stl(&m, &mut buf).unwrap();
    assert_eq!(written as usize, buf.len());
    assert_eq!(buf.len(), 84 + 50 * m.triangles.len());
    let back = read_stl(buf.as_slice()).unwrap();
    let (a, b) = (m.signed_volume(), back.cast::<f64>().signed_volume());
    assert!((a - b).abs() <= 1e-5 * a, "{a} vs {b}");
}

#[test]
fn stl_normals_follow_winding() {
    let m = dome(4, 1.0, 1, 1);
    let mut buf = Vec::new();
    write_stl(&m, &mut buf).unwrap();
    for (k, &tri) in m.triangles.iter().enumerate() {
        let rec = &buf[84 + 50 * k..84 + 50 * (k + 1)];
        let nrm: Vec<f32> = (0..3)
            .map(|c| f32::from_le_bytes(rec[4 * c..4 * c + 4].try_into().unwrap()))
            .collect();
        let want = m.triangle_normal(tri);
        for c in 0..3 {
            assert!((nrm[c] as f64 - want[c]).abs() < 1e-6);
        }
        assert_eq!(&rec[48..50], &[0, 0]);
    }
}

#[test]
fn obj_round_trip() {
    let m = dome(7, 2.5, 5, 5);
    let mut buf = Vec::new();
    let lines = write_obj(&m, &mut buf).unwrap();
    assert_eq!(lines, m.vertices.len() + m.triangles.len());
    let back = read_obj(BufReader::new(buf.as_slice())).unwrap();
    assert_eq!(back.triangles, m.triangles);
    assert_eq!(back.vertices, m.vertices);
    let (a, b) = (m.signed_volume(), back.signed_volume());
    assert!((a - b).abs() <= 1e-9 * a);
}

#[test]
fn obj_indices_in_range() {
    let m = dome(4, 1.0, 1, 1);
    let mut buf = Vec::new();
    assert_eq!(write_obj(&m, &mut buf).unwrap(), 14);
    let text = String::from_utf8(buf).unwrap();
    for line in text.lines().filter(|l| l.starts_with("f ")) {
        for idx in line[2..].split(' ').map(|s| s.parse::<usize>().unwrap()) {
            assert!((1..=6).contains(&idx));
        }
    }
}

#[test]
fn slab_meshes_are_closed() {
    for n in [3, 4, 9] {
        let s = SolidSpec::new(n, 1.0).unwrap();
        for m in [1, 2, 7, 32] {
            let mesh = slab_stack_mesh(&build_slab_stack(m, &s).unwrap(), &s);
            assert_closed(&mesh);
            assert_eq!(mesh.triangles.len(), 2 * (n - 2) + 4 * n * m - 2 * n);
        }
    }
}

#[test]
fn single_precision_dome() {
    let s = SolidSpec::<f32>::new(4, 1.0).unwrap();
    let m = tessellate(&s, MeshResolution::new(16, 16).unwrap()).unwrap();
    assert!(m.is_watertight());
    let v = m.signed_volume();
    assert!((v - 8.0 / 3.0).abs() / (8.0 / 3.0) < 0.005);
}
