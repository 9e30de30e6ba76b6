mod common;

use common::{fourier_motzkin, same_set};
use polyset::exact::{int, Scalar};
use polyset::polyhedron::{h_to_v, is_subset, project_drop, v_to_h, HRep, VRep};
use proptest::prelude::*;

fn hrep(d: usize, rows: &[(Vec<i64>, i64)]) -> HRep {
    let mut h = HRep::new(d);
    for (a, b) in rows {
        h.push_ineq(a.iter().map(|&v| int(v)).collect(), int(*b));
    }
    h
}

fn hrep_strategy(max_dim: usize, max_rows: usize) -> impl Strategy<Value = HRep> {
    (1..=max_dim).prop_flat_map(move |d| {
        prop::collection::vec((prop::collection::vec(-2i64..=2, d), -1i64..=3), 1..=max_rows)
            .prop_map(move |rows| hrep(d, &rows))
    })
}

fn vrep_strategy(max_dim: usize) -> impl Strategy<Value = VRep> {
    (1..=max_dim).prop_flat_map(|d| {
        let v = move || prop::collection::vec(-2i64..=2, d);
        (prop::collection::vec(v(), 1..6), prop::collection::vec(v(), 0..3), prop::collection::vec(v(), 0..2)).prop_map(
            move |(p, r, l)| {
                let s = |x: Vec<i64>| x.into_iter().map(int).collect::<Vec<Scalar>>();
                let mut out = VRep::from_points(d, p.into_iter().map(s).collect());
                r.into_iter().for_each(|x| out.push_ray(s(x)));
                l.into_iter().for_each(|x| out.push_line(s(x)));
                out
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h_to_v_to_h(h in hrep_strategy(6, 8)) {
        let v = h_to_v(&h);
        prop_assert!(is_subset(&v, &h));
        let h2 = v_to_h(&v);
        prop_assert!(is_subset(&v, &h2));
        prop_assert!(is_subset(&h_to_v(&h2), &h));
        prop_assert!(same_set(&h_to_v(&h2), &v));
    }

    #[test]
    fn v_to_h_to_v(v in vrep_strategy(5)) {
        let h = v_to_h(&v);
        prop_assert!(is_subset(&v, &h));
        let v2 = h_to_v(&h);
        prop_assert!(same_set(&v, &v2));
        for p in &v2.points {
            prop_assert!(h.contains(p));
        }
    }

    #[test]
    fn projection_matches_fourier_motzkin(h in hrep_strategy(6, 7), drop_count in 1usize..=3) {
        let d = h.dim;
        prop_assume!(d > drop_count);
        let mut fm = h.clone();
        for k in (d - drop_count..d).rev() {
            fm = fourier_motzkin(&fm, k);
        }
        let keep: Vec<usize> = (0..d - drop_count).collect();
        let projected = project_drop(&h_to_v(&h), &keep);
        let fm_v = h_to_v(&fm);
        prop_assert_eq!(projected.is_empty(), fm_v.is_empty());
        prop_assert!(is_subset(&projected, &fm));
        prop_assert!(same_set(&fm_v, &projected));
    }

    #[test]
    fn recession_cone_of_vertices_and_rays(h in hrep_strategy(5, 7)) {
        let v = h_to_v(&h);
        prop_assume!(!v.is_empty());
        let rec = polyset::polyhedron::recession_cone(&h).unwrap();
        prop_assert!(same_set(&h_to_v(&rec), &v.recession()));
    }
}
