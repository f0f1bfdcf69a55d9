mod common;

use common::{nonzero, random_class, rng, sc, small_isotropic_search};
use g2tori::arith::{hilbert_symbol, rat, relevant_places, Place, Rational};
use g2tori::quadform::{diagonalize_gram, pfister, LaurentForm, QuadForm};
use num_traits::Zero;
use rand::Rng;

fn random_form(r: &mut impl Rng, dim: usize, bound: i64) -> (Vec<i64>, QuadForm) {
    let diag: Vec<i64> = (0..dim).map(|_| nonzero(r, bound)).collect();
    let q = QuadForm::from_ints(&diag).unwrap();
    (diag, q)
}

/// `Pᵀ diag(q) P` for an invertible integer matrix `P`.
fn random_congruent_gram(r: &mut impl Rng, diag: &[i64]) -> Vec<Vec<Rational>> {
    let n = diag.len();
    loop {
        let p: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| r.gen_range(-3..=3)).collect())
            .collect();
        let gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rat((0..n).map(|k| p[k][i] * diag[k] * p[k][j]).sum()))
                    .collect()
            })
            .collect();
        if let Ok(entries) = diagonalize_gram(&gram) {
            if entries.len() == n && entries.iter().all(|e| !e.is_zero()) {
                return gram;
            }
        }
    }
}

#[test]
fn congruent_grams_are_isometric() {
    let mut r = rng(21);
    for i in 0..120 {
        let (diag, q) = random_form(&mut r, 2 + i % 4, 30);
        let gram = random_congruent_gram(&mut r, &diag);
        let q2 = QuadForm::from_gram(&gram).unwrap();
        assert!(q.is_isometric(&q2), "{q:?} vs {q2:?}");
        assert!(q.invariants().same_class(&q2.invariants()));
    }
}

/// Invariants recomputed from the diagonal entries with Hilbert symbols.
fn hasse_from_entries(diag: &[i64], v: Place) -> i8 {
    let mut e = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            e *= hilbert_symbol(sc(diag[i]), sc(diag[j]), v);
        }
    }
    e
}

#[test]
fn isometry_matches_recomputed_invariants() {
    let mut r = rng(22);
    for _ in 0..200 {
        let (d1, q1) = random_form(&mut r, 3, 10);
        let (d2, q2) = random_form(&mut r, 3, 10);
        let det = |d: &[i64]| sc(d.iter().product());
        let pos = |d: &[i64]| d.iter().filter(|&&x| x > 0).count();
        let classes: Vec<_> = d1.iter().chain(&d2).map(|&x| sc(x)).collect();
        let places = relevant_places(&classes);
        for &v in &places {
            assert_eq!(q1.hasse_at(v), hasse_from_entries(&d1, v));
        }
        let same = det(&d1) == det(&d2)
            && pos(&d1) == pos(&d2)
            && places
                .iter()
                .all(|&v| hasse_from_entries(&d1, v) == hasse_from_entries(&d2, v));
        assert_eq!(q1.is_isometric(&q2), same, "{d1:?} vs {d2:?}");
    }
}

#[test]
fn bounded_search_never_contradicts_isotropy() {
    let mut r = rng(23);
    let mut confirmed = 0;
    for i in 0..150 {
        let dim = 2 + i % 3;
        let (diag, q) = random_form(&mut r, dim, 15);
        let bound = if dim == 4 { 8 } else { 20 };
        if let Some(v) = small_isotropic_search(&diag, bound) {
            assert!(q.is_isotropic(), "{diag:?} has zero at {v:?}");
            confirmed += 1;
        }
    }
    assert!(confirmed > 20, "only {confirmed} isotropic forms found");
}

#[test]
fn known_anisotropic_forms() {
    for diag in [
        vec![1, 1, 1],
        vec![1, 1, -7],
        vec![1, -2, -5],
        vec![1, 1, 1, -7],
        vec![1, 1, 1, 1, 1, 1, 1, 1],
    ] {
        assert!(
            !QuadForm::from_ints(&diag).unwrap().is_isotropic(),
            "{diag:?}"
        );
    }
    for diag in [vec![1, 1, -2], vec![1, 1, 1, -3], vec![2, 3, -5]] {
        assert!(small_isotropic_search(&diag, 10).is_some());
        assert!(
            QuadForm::from_ints(&diag).unwrap().is_isotropic(),
            "{diag:?}"
        );
    }
}

#[test]
fn adding_a_hyperbolic_plane_makes_isotropic() {
    let mut r = rng(24);
    for i in 0..100 {
        let (_, q) = random_form(&mut r, 1 + i % 5, 50);
        let h = q.direct_sum(&QuadForm::hyperbolic(1));
        assert!(h.is_isotropic());
        let (index, aniso) = h.witt_decompose();
        let (qi, qa) = q.witt_decompose();
        assert_eq!((index, aniso), (qi + 1, qa));
    }
}

#[test]
fn q_minus_q_is_hyperbolic() {
    let mut r = rng(25);
    for i in 0..100 {
        let (_, q) = random_form(&mut r, 1 + i % 5, 50);
        let s = q.direct_sum(&q.negate());
        assert_eq!(s.witt_decompose(), (q.dim(), 0));
        assert!(s.is_isometric(&QuadForm::hyperbolic(q.dim())));
    }
}

#[test]
fn pfister_forms_are_isotropic_only_when_hyperbolic() {
    let mut r = rng(26);
    for i in 0..150 {
        let n = 1 + i % 3;
        let slots: Vec<_> = (0..n).map(|_| random_class(&mut r, 30)).collect();
        let p = pfister(&slots).unwrap();
        assert_eq!(p.dim(), 1 << n);
        let (index, aniso) = p.witt_decompose();
        if p.is_isotropic() {
            assert_eq!((index, aniso), (p.dim() / 2, 0), "{slots:?}");
        } else {
            assert_eq!((index, aniso), (0, p.dim()));
        }
    }
    assert!(pfister(&[sc(-1), sc(-1), sc(-1)])
        .unwrap()
        .is_isometric(&QuadForm::from_ints(&[1; 8]).unwrap()));
}

#[test]
fn laurent_isotropy_is_residue_isotropy() {
    let mut r = rng(27);
    for _ in 0..80 {
        let (_, q1) = random_form(&mut r, 2, 20);
        let (_, q2) = random_form(&mut r, 2, 20);
        let f = LaurentForm::new(q1.clone(), q2.clone());
        assert_eq!(f.is_isotropic(), q1.is_isotropic() || q2.is_isotropic());
        assert_eq!(f.dim(), 4);
    }
    let nq = pfister(&[sc(-1), sc(-1)]).unwrap();
    assert!(LaurentForm::doubled_by_t(&nq).second_residue_obstructs_descent());
    assert!(
        !LaurentForm::doubled_by_t(&pfister(&[sc(1), sc(-1)]).unwrap())
            .second_residue_obstructs_descent()
    );
}
