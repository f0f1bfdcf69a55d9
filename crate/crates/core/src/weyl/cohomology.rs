//! First cohomology of subgroups of W0 with coefficients in a W0-lattice,
//! computed from the inhomogeneous 1-cochains and Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::group::Subgroup;
use super::lattice::{lattice_catalog, GaloisLattice};
use crate::error::{Error, Result};
use crate::intlin::ZMatrix;

/// Elementary divisors (> 1) of `H¹(Γ, L)`; the empty list means the group is trivial.
pub fn h1(gamma: &Subgroup, lattice: &GaloisLattice) -> Vec<u64> {
    let elems = gamma.elements();
    let n = elems.len();
    let r = lattice.rank;
    let pos = |g| {
        elems
            .iter()
            .position(|&x| x == g)
            .expect("subgroup is closed")
    };
    let var = |i: usize, a: usize| i * r + a;

    // cocycle condition f(gh) − f(g) − g·f(h) = 0 for all pairs
    let mut eqs = ZMatrix::zeros(n * n * r, n * r);
    for (i, &g) in elems.iter().enumerate() {
        let rho = lattice.action(g);
        for (j, &h) in elems.iter().enumerate() {
            let k = pos(g.compose(h));
            for a in 0..r {
                let row = (i * n + j) * r + a;
                eqs[(row, var(k, a))] += BigInt::one();
                eqs[(row, var(i, a))] -= BigInt::one();
                for b in 0..r {
                    eqs[(row, var(j, b))] -= &rho[(a, b)];
                }
            }
        }
    }
    let ce = eqs.column_echelon();
    let z_rank = n * r - ce.rank;
    if z_rank == 0 {
        return Vec::new();
    }

    // coboundaries g ↦ (g − 1)e_b, written in the kernel basis of the echelon transform
    let mut coboundaries = ZMatrix::zeros(n * r, r);
    for (i, &g) in elems.iter().enumerate() {
        let rho = lattice.action(g);
        for a in 0..r {
            for b in 0..r {
                let mut v = rho[(a, b)].clone();
                if a == b {
                    v -= BigInt::one();
                }
                coboundaries[(var(i, a), b)] = v;
            }
        }
    }
    let coords = ce.inverse.mul(&coboundaries);
    debug_assert!(
        coords.select_rows(0..ce.rank).is_zero(),
        "coboundaries are cocycles"
    );
    let in_kernel = coords.select_rows(ce.rank..n * r);

    let divisors = in_kernel.elementary_divisors();
    assert_eq!(divisors.len(), z_rank, "H^1 of a finite group is torsion");
    divisors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("divisor divides the group order"))
        .collect()
}

/// Order of the group with the given elementary divisors.
pub fn group_order(divisors: &[u64]) -> u64 {
    divisors.iter().product()
}

/// Checks `H¹(Γ, X_*) = 0` for the cocharacter lattice `X_*` of a torus of
/// type (k′, l) whose Galois image is Γ. Requires both k′ and l to be fields,
/// i.e. Γ maps onto Z/2 and acts transitively on three letters.
pub fn verify_h1_vanishing(gamma: &Subgroup) -> Result<bool> {
    if !gamma.sign_onto() || !gamma.s3_transitive() {
        return Err(Error::PreconditionViolated(format!(
            "{gamma:?} needs an onto Z/2-projection and a transitive S3-projection"
        )));
    }
    let cochar = lattice_catalog().torus_cocharacters();
    Ok(h1(gamma, &cochar).is_empty())
}
