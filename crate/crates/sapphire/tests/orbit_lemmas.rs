//! Exhaustive checks of the orbit structure over all valid gluing
//! matrices with entries in [-4, 4] \ {0} and determinant +1 or -1.

use sapphire::{
    canonical_form, h1_of_presentation, h1_sapphire, homeomorphic, morimoto_orbit,
    orbit_equivalent, pi1_sapphire, SapphireMatrix,
};

fn all_valid(limit: i64) -> Vec<SapphireMatrix> {
    let values: Vec<i64> = (-limit..=limit).filter(|&v| v != 0).collect();
    let mut out = Vec::new();
    for &r in &values {
        for &s in &values {
            for &t in &values {
                for &u in &values {
                    if (r * u - s * t).abs() == 1 {
                        out.push(SapphireMatrix::from_entries(r, s, t, u).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[test]
fn every_valid_matrix_has_an_even_number_of_negative_entries() {
    for m in all_valid(4) {
        let (r, s, t, u) = m.entries();
        let negatives = [r, s, t, u].iter().filter(|&&v| v < 0).count();
        assert_eq!(negatives % 2, 0, "matrix {m}");
    }
}

#[test]
fn every_orbit_has_a_positive_member_and_canonical_form() {
    for m in all_valid(4) {
        let orbit = morimoto_orbit(&m);
        assert!(orbit.len() <= 32, "matrix {m}");
        assert!(orbit.contains(&m.matrix()));
        assert!(orbit.contains(&(-m.matrix())));
        assert!(
            orbit.iter().any(|x| x.is_positive()),
            "no positive member for {m}"
        );
        let canon = canonical_form(&m).unwrap();
        let (r, _, _, u) = canon.entries();
        assert!(canon.matrix().is_positive() && r <= u);
    }
}

#[test]
fn canonical_form_is_constant_on_orbits_and_idempotent() {
    for m in all_valid(3) {
        let canon = canonical_form(&m).unwrap();
        assert_eq!(canonical_form(canon.as_sapphire()).unwrap(), canon);
        for x in morimoto_orbit(&m) {
            let member = SapphireMatrix::new(x).unwrap();
            assert_eq!(canonical_form(&member).unwrap(), canon, "member {x} of {m}");
        }
    }
}

#[test]
fn orbit_membership_agrees_with_canonical_equality() {
    // The two routes to the homeomorphism decision define the same
    // relation, which makes it an equivalence relation for free.
    let matrices = all_valid(3);
    let canons: Vec<_> = matrices
        .iter()
        .map(|m| canonical_form(m).unwrap())
        .collect();
    let orbits: Vec<_> = matrices.iter().map(morimoto_orbit).collect();
    for (i, a) in matrices.iter().enumerate() {
        for (j, b) in matrices.iter().enumerate() {
            let by_orbit = orbits[i].contains(&b.matrix());
            let by_canon = canons[i] == canons[j];
            assert_eq!(by_orbit, by_canon, "pair {a}, {b}");
            assert_eq!(by_orbit, orbit_equivalent(a, b));
            assert_eq!(by_canon, homeomorphic(a, b));
        }
    }
}

#[test]
fn off_diagonal_data_is_orbit_invariant() {
    // |s|, |t|, their parities, and the predicate |r| = |u| never change
    // across an orbit; the involution classification depends on this.
    for m in all_valid(3) {
        let (r, s, t, u) = m.entries();
        for x in morimoto_orbit(&m) {
            assert_eq!(x.s.abs(), s.abs(), "matrix {m}, member {x}");
            assert_eq!(x.t.abs(), t.abs(), "matrix {m}, member {x}");
            assert_eq!(
                x.r.abs() == x.u.abs(),
                r.abs() == u.abs(),
                "matrix {m}, member {x}"
            );
        }
    }
}

#[test]
fn h1_formula_agrees_with_smith_normal_form() {
    for m in all_valid(4) {
        assert_eq!(
            h1_sapphire(&m),
            h1_of_presentation(&pi1_sapphire(&m)),
            "matrix {m}"
        );
    }
}

#[test]
fn h1_is_finite_for_every_sapphire() {
    for m in all_valid(3) {
        assert!(h1_sapphire(&m).is_finite(), "matrix {m}");
    }
}
