//! W0-lattices of the G2 torus, the maps between them and exactness checks.
//!
//! Every lattice stores one integer matrix per element of W0 (indexed by
//! [`W0Element::index`]); lattices on which only S3 acts simply let the center
//! act trivially.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::group::{build_w0, Perm, W0Element};
use crate::error::{Error, Result};
use crate::intlin::ZMatrix;

/// A free Z-module of finite rank with a W0-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisLattice {
    pub name: String,
    pub rank: usize,
    matrices: Vec<ZMatrix>,
}

impl GaloisLattice {
    /// Builds a lattice from the action of every element; the homomorphism
    /// property is checked.
    pub fn new(name: &str, rank: usize, action: impl Fn(W0Element) -> ZMatrix) -> Result<Self> {
        let matrices: Vec<ZMatrix> = W0Element::all().into_iter().map(action).collect();
        let lattice = GaloisLattice {
            name: name.to_string(),
            rank,
            matrices,
        };
        if lattice
            .matrices
            .iter()
            .any(|m| m.rows() != rank || m.cols() != rank)
        {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: lattice.matrices[0].rows(),
            });
        }
        if !lattice.is_homomorphism() {
            return Err(Error::PreconditionViolated(format!(
                "action on {name} is not a homomorphism"
            )));
        }
        Ok(lattice)
    }

    pub fn action(&self, g: W0Element) -> &ZMatrix {
        &self.matrices[g.index()]
    }

    pub fn is_homomorphism(&self) -> bool {
        let all = W0Element::all();
        all.iter().all(|&g| {
            all.iter()
                .all(|&h| self.action(g).mul(self.action(h)) == *self.action(g.compose(h)))
        }) && self.matrices.iter().all(|m| m.determinant().abs().is_one())
    }

    /// Contragredient action `g ↦ (g⁻¹)ᵀ` on the dual lattice.
    pub fn dual(&self) -> GaloisLattice {
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        GaloisLattice {
            name,
            rank: self.rank,
            matrices: W0Element::all()
                .into_iter()
                .map(|g| self.action(g.inverse()).transpose())
                .collect(),
        }
    }

    /// Same underlying action under a different name.
    pub fn renamed(&self, name: &str) -> GaloisLattice {
        GaloisLattice {
            name: name.to_string(),
            ..self.clone()
        }
    }
}

/// An integer matrix between two lattices, `target_rank × source_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub name: String,
    pub source: GaloisLattice,
    pub target: GaloisLattice,
    pub matrix: ZMatrix,
}

impl LatticeMap {
    pub fn new(
        name: &str,
        source: &GaloisLattice,
        target: &GaloisLattice,
        matrix: ZMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::DimensionMismatch {
                expected: target.rank * source.rank,
                got: matrix.rows() * matrix.cols(),
            });
        }
        Ok(LatticeMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn is_equivariant(&self) -> bool {
        W0Element::all().into_iter().all(|g| {
            self.target.action(g).mul(&self.matrix) == self.matrix.mul(self.source.action(g))
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &LatticeMap) -> Result<LatticeMap> {
        if self.target != next.source {
            return Err(Error::NotComposable(format!(
                "{} lands in {}, {} starts at {}",
                self.name, self.target.name, next.name, next.source.name
            )));
        }
        LatticeMap::new(
            &format!("{}.{}", next.name, self.name),
            &self.source,
            &next.target,
            next.matrix.mul(&self.matrix),
        )
    }
}

/// Outcome of checking `0 → A → B → C → 0` for two maps `A → B → C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub injective: bool,
    pub composite_zero: bool,
    /// Image of the first map is saturated and fills the kernel of the second.
    pub exact_in_middle: bool,
    pub surjective: bool,
    pub equivariant: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.injective
            && self.composite_zero
            && self.exact_in_middle
            && self.surjective
            && self.equivariant
    }
}

/// Checks that `0 → f.source → f.target → g.target → 0` is an exact sequence
/// of W0-lattices.
pub fn verify_exact(f: &LatticeMap, g: &LatticeMap) -> Result<ExactnessReport> {
    let composite = f.then(g)?;
    let rank_f = f.matrix.rank();
    let rank_g = g.matrix.rank();
    let injective = rank_f == f.source.rank;
    let composite_zero = composite.matrix.is_zero();
    // im f is saturated iff all its nonzero Smith invariants are 1
    let saturated = f.matrix.elementary_divisors().iter().all(One::is_one);
    let exact_in_middle = composite_zero && saturated && rank_f + rank_g == f.target.rank;
    let surjective =
        rank_g == g.target.rank && g.matrix.elementary_divisors().iter().all(One::is_one);
    Ok(ExactnessReport {
        injective,
        composite_zero,
        exact_in_middle,
        surjective,
        equivariant: f.is_equivariant() && g.is_equivariant(),
    })
}

fn perm_matrix3(p: Perm, scale: i64) -> ZMatrix {
    let m = p.matrix();
    let rows: Vec<Vec<i64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x * scale).collect())
        .collect();
    ZMatrix::from_rows(&rows)
}

/// Root lattice in the basis (α1 short, α2 long).
pub fn root_lattice() -> GaloisLattice {
    let w0 = build_w0();
    GaloisLattice::new("T0hat", 2, |g| {
        let m = w0[g.index()].matrix;
        ZMatrix::from_rows(&[m[0], m[1]])
    })
    .expect("Weyl matrices form a representation")
}

/// `⊕ Z εᵢ`: S3 permutes, the center acts by −1.
pub fn eps_lattice() -> GaloisLattice {
    GaloisLattice::new("eps", 3, |g| perm_matrix3(g.perm, g.sign as i64)).unwrap()
}

/// `Z` with W0 acting through the sign of the Z/2 factor.
pub fn sign_line() -> GaloisLattice {
    GaloisLattice::new("Zsgn", 1, |g| ZMatrix::from_rows(&[[g.sign as i64]])).unwrap()
}

/// Images of `e1, e2` in `Z³/⟨(1,1,1)⟩` expressed in that basis (`e3 = −e1 − e2`).
fn quotient_coords(i: usize) -> [i64; 2] {
    match i {
        0 => [1, 0],
        1 => [0, 1],
        _ => [-1, -1],
    }
}

/// `Z³/⟨(1,1,1)⟩` in the basis (ē1, ē2); S3 permutes and the center is trivial.
pub fn n_lattice() -> GaloisLattice {
    GaloisLattice::new("N", 2, |g| {
        let mut m = ZMatrix::zeros(2, 2);
        for col in 0..2 {
            let img = quotient_coords(g.perm.apply(col));
            m[(0, col)] = BigInt::from(img[0]);
            m[(1, col)] = BigInt::from(img[1]);
        }
        m
    })
    .unwrap()
}

/// `N ⊕ N`, S3 diagonal and the center swapping the summands.
pub fn m_lattice() -> GaloisLattice {
    let n = n_lattice();
    GaloisLattice::new("M", 4, |g| {
        let block = n.action(W0Element::new(1, g.perm));
        let mut m = ZMatrix::zeros(4, 4);
        // the center sends (x, y) to (y, x)
        let swap = if g.sign == 1 { 0 } else { 2 };
        for i in 0..2 {
            for j in 0..2 {
                m[(i, swap + j)] = block[(i, j)].clone();
                m[(2 + i, (2 + swap) % 4 + j)] = block[(i, j)].clone();
            }
        }
        m
    })
    .unwrap()
}

/// Augmentation sublattice `{x ∈ Z³ : Σxᵢ = 0}` in the basis (e1−e2, e2−e3),
/// S3 permuting and the center trivial.
pub fn augmentation_lattice() -> GaloisLattice {
    // coordinates of v = (v1, v2, v3) with sum 0: v = v1 (e1-e2) + (v1+v2)(e2-e3)
    let coords = |v: [i64; 3]| [v[0], v[0] + v[1]];
    let basis = [[1, -1, 0], [0, 1, -1]];
    GaloisLattice::new("Ilk", 2, |g| {
        let mut m = ZMatrix::zeros(2, 2);
        for (col, b) in basis.iter().enumerate() {
            let mut img = [0i64; 3];
            for i in 0..3 {
                img[g.perm.apply(i)] = b[i];
            }
            let c = coords(img);
            m[(0, col)] = BigInt::from(c[0]);
            m[(1, col)] = BigInt::from(c[1]);
        }
        m
    })
    .unwrap()
}

/// Integer basis (as flattened `target × source` matrices, row-major) of the
/// maps `source → target` commuting with the given elements.
pub fn equivariant_maps(
    source: &GaloisLattice,
    target: &GaloisLattice,
    elements: &[W0Element],
) -> Vec<ZMatrix> {
    let (s, t) = (source.rank, target.rank);
    let unknowns = s * t;
    let mut a = ZMatrix::zeros(elements.len() * unknowns, unknowns);
    for (gi, &g) in elements.iter().enumerate() {
        let rs = source.action(g);
        let rt = target.action(g);
        // (rt φ − φ rs)[i][j] = Σ_k rt[i][k] φ[k][j] − Σ_k φ[i][k] rs[k][j]
        for i in 0..t {
            for j in 0..s {
                let row = gi * unknowns + i * s + j;
                for k in 0..t {
                    a[(row, k * s + j)] += &rt[(i, k)];
                }
                for k in 0..s {
                    a[(row, i * s + k)] -= &rs[(k, j)];
                }
            }
        }
    }
    let kernel = a.kernel_basis();
    (0..kernel.cols())
        .map(|c| {
            let v = kernel.column(c);
            let mut m = ZMatrix::zeros(t, s);
            for i in 0..t {
                for j in 0..s {
                    m[(i, j)] = v[i * s + j].clone();
                }
            }
            m
        })
        .collect()
}

/// The S3-equivariant isomorphism `N → target` used inside `g_M`, solved from
/// the equivariance equations. Fails if the solution space is not a line or the
/// primitive solution is not invertible over Z.
pub fn solve_n_identification(target: &GaloisLattice) -> Result<ZMatrix> {
    let s3: Vec<W0Element> = Perm::all()
        .into_iter()
        .map(|p| W0Element::new(1, p))
        .collect();
    let sols = equivariant_maps(&n_lattice(), target, &s3);
    if sols.len() != 1 {
        return Err(Error::PreconditionViolated(format!(
            "expected a line of S3-maps N -> {}, found rank {}",
            target.name,
            sols.len()
        )));
    }
    let phi = sols.into_iter().next().unwrap();
    let det = phi.determinant();
    if !det.abs().is_one() {
        return Err(Error::PreconditionViolated(format!(
            "primitive S3-map N -> {} has determinant {det}",
            target.name
        )));
    }
    Ok(phi)
}

/// Named lattices and the maps of the two torus sequences.
#[derive(Clone, Debug)]
pub struct LatticeCatalog {
    pub lattices: BTreeMap<String, GaloisLattice>,
    /// `T0hat → eps`, `α1 ↦ ε1−ε2`, `α2 ↦ −2ε1+ε2+ε3`.
    pub f_eps: LatticeMap,
    /// `eps → Zsgn`, sum of coordinates.
    pub deg: LatticeMap,
    /// Diagonal `N → M`.
    pub f_nm: LatticeMap,
    /// `(x, y) ↦ φ(x − y)` with `φ: N ≅ T0coch` solved by equivariance.
    pub g_m: LatticeMap,
}

impl LatticeCatalog {
    pub fn build() -> Result<LatticeCatalog> {
        let t0hat = root_lattice();
        let t0coch = t0hat.dual().renamed("T0coch");
        let eps = eps_lattice();
        let zsgn = sign_line();
        let n = n_lattice();
        let m = m_lattice();
        let ilk = augmentation_lattice();

        let f_eps = LatticeMap::new(
            "f_eps",
            &t0hat,
            &eps,
            ZMatrix::from_rows(&[[1, -2], [-1, 1], [0, 1]]),
        )?;
        let deg = LatticeMap::new("deg", &eps, &zsgn, ZMatrix::from_rows(&[[1, 1, 1]]))?;
        let f_nm = LatticeMap::new(
            "f_NM",
            &n,
            &m,
            ZMatrix::from_rows(&[[1, 0], [0, 1], [1, 0], [0, 1]]),
        )?;
        let phi = solve_n_identification(&t0coch)?;
        let minus_phi = ZMatrix::zeros(2, 2).sub(&phi);
        let g_m = LatticeMap::new("g_M", &m, &t0coch, phi.hcat(&minus_phi))?;

        let lattices = [t0hat, t0coch, eps, zsgn, n, m, ilk]
            .into_iter()
            .map(|l| (l.name.clone(), l))
            .collect();
        Ok(LatticeCatalog {
            lattices,
            f_eps,
            deg,
            f_nm,
            g_m,
        })
    }

    pub fn lattice(&self, name: &str) -> Result<GaloisLattice> {
        if let Some(base) = name.strip_suffix('*') {
            return Ok(self.lattice(base)?.dual());
        }
        self.lattices
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownLattice(name.to_string()))
    }

    pub fn maps(&self) -> [&LatticeMap; 4] {
        [&self.f_eps, &self.deg, &self.f_nm, &self.g_m]
    }

    /// Cocharacter lattice of the torus of type (k′, l): the dual of the
    /// cokernel of `f_NM`, which `g_M` identifies with `T0coch`.
    pub fn torus_cocharacters(&self) -> GaloisLattice {
        self.g_m.target.dual().renamed("Tkl_cochar")
    }
}

/// Catalog built once per call; construction is cheap.
pub fn lattice_catalog() -> LatticeCatalog {
    LatticeCatalog::build().expect("catalog lattices are consistent")
}
