mod common;

use common::{isotropic_vector_search, random_algebra, random_element, random_octonion, rng, sc};
use g2tori::arith::{rat, Rational};
use g2tori::composition::{common_slot, AlgebraElement, CompositionAlgebra, ASSOCIATOR_WITNESS};
use g2tori::etale::QuadraticEtale;
use g2tori::quadform::{pfister, QuadForm};
use num_traits::{One, Zero};

#[test]
fn norms_compose_in_every_dimension() {
    let mut r = rng(41);
    for doublings in 0..=3 {
        for _ in 0..6 {
            let a = random_algebra(&mut r, doublings);
            for _ in 0..40 {
                let (x, y) = (
                    random_element(&mut r, a.dim()),
                    random_element(&mut r, a.dim()),
                );
                let xy = a.multiply(&x, &y).unwrap();
                assert_eq!(
                    a.norm(&xy).unwrap(),
                    a.norm(&x).unwrap() * a.norm(&y).unwrap()
                );
            }
        }
    }
}

#[test]
fn alternative_and_moufang() {
    let mut r = rng(42);
    for _ in 0..5 {
        let a = random_octonion(&mut r);
        for _ in 0..40 {
            let x = random_element(&mut r, 8);
            let y = random_element(&mut r, 8);
            let z = random_element(&mut r, 8);
            let m = |p: &AlgebraElement, q: &AlgebraElement| a.multiply(p, q).unwrap();
            assert_eq!(m(&x, &m(&x, &y)), m(&m(&x, &x), &y));
            assert_eq!(m(&m(&y, &x), &x), m(&y, &m(&x, &x)));
            // z(x(zy)) = ((zx)z)y
            assert_eq!(m(&z, &m(&x, &m(&z, &y))), m(&m(&m(&z, &x), &z), &y));
            // ((xz)y)z = x(z(yz))
            assert_eq!(m(&m(&m(&x, &z), &y), &z), m(&x, &m(&z, &m(&y, &z))));
        }
        let (i, j, k) = ASSOCIATOR_WITNESS;
        let assoc = a.associator(&a.basis(i), &a.basis(j), &a.basis(k)).unwrap();
        assert!(assoc.coords.iter().any(|c| !c.is_zero()));
    }
}

#[test]
fn quaternions_are_associative() {
    let mut r = rng(43);
    for _ in 0..5 {
        let a = random_algebra(&mut r, 2);
        for _ in 0..30 {
            let (x, y, z) = (
                random_element(&mut r, 4),
                random_element(&mut r, 4),
                random_element(&mut r, 4),
            );
            assert!(a
                .associator(&x, &y, &z)
                .unwrap()
                .coords
                .iter()
                .all(Zero::is_zero));
        }
    }
}

#[test]
fn conjugation_is_an_anti_automorphism() {
    let mut r = rng(44);
    for _ in 0..5 {
        let a = random_octonion(&mut r);
        for _ in 0..40 {
            let (x, y) = (random_element(&mut r, 8), random_element(&mut r, 8));
            let lhs = a.conjugate(&a.multiply(&x, &y).unwrap()).unwrap();
            let rhs = a
                .multiply(&a.conjugate(&y).unwrap(), &a.conjugate(&x).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(a.conjugate(&a.conjugate(&x).unwrap()).unwrap(), x);
            // polar form is bilinear and symmetric
            let b = a.trace_bilinear(&x, &y).unwrap();
            assert_eq!(b, a.trace_bilinear(&y, &x).unwrap());
            let two_x = AlgebraElement::new(x.coords.iter().map(|c| c * rat(2)).collect());
            assert_eq!(a.trace_bilinear(&two_x, &y).unwrap(), b.clone() * rat(2));
            // x + σ(x) is the scalar N(x + 1) − N(x) − 1
            let t = x.add(&a.conjugate(&x).unwrap());
            assert_eq!(t.coords[0], a.trace_bilinear(&x, &a.one()).unwrap());
        }
    }
}

#[test]
fn norm_form_matches_basis_norms() {
    let mut r = rng(45);
    for _ in 0..20 {
        let a = random_octonion(&mut r);
        let mut diag: Vec<Rational> = Vec::new();
        for i in 0..8 {
            let expected = a
                .params()
                .iter()
                .enumerate()
                .filter(|(bit, _)| i >> bit & 1 == 1)
                .fold(Rational::one(), |acc, (_, p)| acc * -p);
            let n = a.norm(&a.basis(i)).unwrap();
            assert_eq!(n, expected);
            for j in 0..i {
                assert!(a
                    .trace_bilinear(&a.basis(i), &a.basis(j))
                    .unwrap()
                    .is_zero());
            }
            diag.push(n);
        }
        assert!(QuadForm::from_rationals(&diag)
            .unwrap()
            .is_isometric(&a.norm_form()));
        assert!(a
            .norm_form()
            .is_isometric(&pfister(&a.param_classes()).unwrap()));
    }
}

#[test]
fn exactly_two_octonion_classes() {
    let mut r = rng(46);
    let algebras: Vec<CompositionAlgebra> = (0..50).map(|_| random_octonion(&mut r)).collect();
    let mut reps: Vec<CompositionAlgebra> = Vec::new();
    for a in &algebras {
        if !reps.iter().any(|b| a.is_isomorphic(b)) {
            reps.push(a.clone());
        }
        let (pos, neg) = a.norm_form().signature();
        assert_eq!(a.is_split().unwrap(), pos > 0 && neg > 0);
        let diag: Vec<i64> = a.norm_form().diag.iter().map(|s| s.rep()).collect();
        if isotropic_vector_search(&diag, 40).is_some() {
            assert!(a.is_split().unwrap());
        }
    }
    assert_eq!(reps.len(), 2);
    assert!(reps
        .iter()
        .any(|a| a.is_isomorphic(&CompositionAlgebra::cayley())));
    assert!(reps
        .iter()
        .any(|a| a.is_isomorphic(&CompositionAlgebra::split_octonions())));
}

#[test]
fn subalgebra_embeddings() {
    let cayley = CompositionAlgebra::cayley();
    for d in [-1, -2, -3, -7] {
        assert!(cayley
            .embeds_quadratic(&QuadraticEtale::from_int(d).unwrap())
            .unwrap());
    }
    for d in [1, 2, 3, 5] {
        assert!(!cayley
            .embeds_quadratic(&QuadraticEtale::from_int(d).unwrap())
            .unwrap());
    }
    let hamilton = CompositionAlgebra::quaternion(sc(-1), sc(-1));
    let c = cayley.embeds_quaternion(&hamilton, 30).unwrap().unwrap();
    assert!(pfister(&[sc(-1), sc(-1), c])
        .unwrap()
        .is_isometric(&cayley.norm_form()));
    assert_eq!(
        cayley
            .embeds_quaternion(&CompositionAlgebra::quaternion(sc(1), sc(-1)), 30)
            .unwrap(),
        None
    );
    let slot = common_slot(sc(-1), sc(-2), &hamilton, 30).unwrap();
    for d in [-1, -2] {
        assert!(pfister(&[sc(d), slot])
            .unwrap()
            .is_isometric(&hamilton.norm_form()));
    }
    assert!(CompositionAlgebra::from_ints(&[])
        .unwrap()
        .is_split()
        .is_err());
    assert!(CompositionAlgebra::from_ints(&[1, 2, 3, 4]).is_err());
    assert!(CompositionAlgebra::from_ints(&[1, 0, 3]).is_err());
}
