//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use g2tori::arith::{rat, Rational, SquareClass};
use g2tori::composition::{AlgebraElement, CompositionAlgebra};
use g2tori::intlin::ZMatrix;
use g2tori::weyl::{GaloisLattice, Subgroup, W0Element};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sc(n: i64) -> SquareClass {
    SquareClass::from_int(n).unwrap()
}

pub fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

pub fn random_class(rng: &mut impl Rng, bound: i64) -> SquareClass {
    sc(nonzero(rng, bound))
}

pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound.max(1));
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_octonion(rng: &mut impl Rng) -> CompositionAlgebra {
    let params = (0..3).map(|_| rat(nonzero(rng, 12))).collect();
    CompositionAlgebra::new(params).unwrap()
}

pub fn random_algebra(rng: &mut impl Rng, doublings: usize) -> CompositionAlgebra {
    let params = (0..doublings).map(|_| rat(nonzero(rng, 12))).collect();
    CompositionAlgebra::new(params).unwrap()
}

pub fn random_element(rng: &mut impl Rng, dim: usize) -> AlgebraElement {
    AlgebraElement::new((0..dim).map(|_| random_rational(rng, 9)).collect())
}

/// `(a, b)_p = 1` iff `z² = ax² + by²` has a solution mod `p^k` with `x, y`
/// not both divisible by `p`. Scaling by a unit lets one of `x, y` be 1.
pub fn hilbert_by_search(a: i64, b: i64, p: i64, k: u32) -> i8 {
    let m = p.pow(k);
    let squares: HashSet<i64> = (0..m).map(|z| z * z % m).collect();
    let hit = |x: i64, y: i64| squares.contains(&(a * x % m * x + b * y % m * y).rem_euclid(m));
    let found = (0..m).any(|y| hit(1, y)) || (0..m).step_by(p as usize).any(|x| hit(x, 1));
    if found {
        1
    } else {
        -1
    }
}

/// An integer vector with coordinates in `[-bound, bound]` and at most three
/// nonzero entries on which the diagonal form vanishes.
pub fn isotropic_vector_search(diag: &[i64], bound: i64) -> Option<Vec<i64>> {
    let n = diag.len();
    let is_square = |v: i64| {
        if v < 0 {
            return None;
        }
        let r = (v as f64).sqrt().round() as i64;
        (r - 1..=r + 1).find(|&s| s >= 0 && s * s == v)
    };
    for i in 0..n {
        for j in i + 1..n {
            for x in 1..=bound {
                for y in 0..=bound {
                    let partial = diag[i] * x * x + diag[j] * y * y;
                    if y > 0 && partial == 0 {
                        let mut v = vec![0; n];
                        v[i] = x;
                        v[j] = y;
                        return Some(v);
                    }
                    for k in j + 1..n {
                        // diag[k] z² = −partial
                        if (-partial) % diag[k] != 0 {
                            continue;
                        }
                        if let Some(z) = is_square(-partial / diag[k]) {
                            if z <= bound && z > 0 {
                                let mut v = vec![0; n];
                                v[i] = x;
                                v[j] = y;
                                v[k] = z;
                                return Some(v);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Integer vectors with coordinates in `[-bound, bound]`, for small dimensions.
pub fn small_isotropic_search(diag: &[i64], bound: i64) -> Option<Vec<i64>> {
    let n = diag.len();
    let mut v = vec![-bound; n];
    loop {
        if v.iter().any(|&c| c != 0) {
            let val: i64 = v.iter().zip(diag).map(|(x, a)| a * x * x).sum();
            if val == 0 {
                return Some(v);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            v[i] += 1;
            if v[i] > bound {
                v[i] = -bound;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// `H¹` of a cyclic group `⟨g⟩` as `ker(Norm) / im(g − 1)`.
pub fn cyclic_h1(gamma: &Subgroup, lattice: &GaloisLattice) -> Vec<u64> {
    let g = gamma.cyclic_generator().expect("cyclic subgroup");
    let r = lattice.rank;
    let rho = lattice.action(g);
    let mut norm = ZMatrix::zeros(r, r);
    let mut power = ZMatrix::identity(r);
    for _ in 0..g.order() {
        for i in 0..r {
            for j in 0..r {
                let v = norm[(i, j)].clone() + &power[(i, j)];
                norm[(i, j)] = v;
            }
        }
        power = rho.mul(&power);
    }
    let ce = norm.column_echelon();
    let k = r - ce.rank;
    if k == 0 {
        return Vec::new();
    }
    let g_minus_one = rho.sub(&ZMatrix::identity(r));
    let coords = ce.inverse.mul(&g_minus_one).select_rows(ce.rank..r);
    let divisors = coords.elementary_divisors();
    assert_eq!(
        divisors.len(),
        k,
        "image of g - 1 has full rank in ker(Norm)"
    );
    divisors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().unwrap())
        .collect()
}

pub fn is_cyclic(gamma: &Subgroup) -> bool {
    gamma.cyclic_generator().is_some()
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut out = 1;
    while m.is_multiple_of(p) {
        m /= p;
        out *= p;
    }
    out
}

pub fn element_names(gamma: &Subgroup) -> Vec<String> {
    gamma.elements().iter().map(W0Element::to_string).collect()
}
