//! Diagonal quadratic forms over Q.
//!
//! Forms are kept diagonal; a Gram matrix is diagonalized once on the way in.
//! Isometry, isotropy and Witt decomposition are decided from the complete set of
//! invariants over Q (dimension, signed determinant, signature, Hasse symbols),
//! so no explicit vectors or isometries are ever built.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    hilbert_symbol, is_local_square, relevant_places, squarefree_class, Place, Rational,
    SquareClass,
};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QuadForm {
    pub diag: Vec<SquareClass>,
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.diag.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ">")
    }
}

impl QuadForm {
    pub fn new(diag: Vec<SquareClass>) -> Self {
        QuadForm { diag }
    }

    pub fn zero() -> Self {
        QuadForm { diag: Vec::new() }
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        entries
            .iter()
            .map(|&n| SquareClass::from_int(n))
            .collect::<Result<Vec<_>>>()
            .map(QuadForm::new)
    }

    pub fn from_rationals(entries: &[Rational]) -> Result<Self> {
        entries
            .iter()
            .map(squarefree_class)
            .collect::<Result<Vec<_>>>()
            .map(QuadForm::new)
    }

    /// `n` copies of `<1,-1>`.
    pub fn hyperbolic(planes: usize) -> Self {
        let mut diag = Vec::with_capacity(2 * planes);
        for _ in 0..planes {
            diag.push(SquareClass::ONE);
            diag.push(SquareClass::MINUS_ONE);
        }
        QuadForm { diag }
    }

    /// Diagonalizes a symmetric Gram matrix by exact congruence.
    pub fn from_gram(gram: &[Vec<Rational>]) -> Result<Self> {
        let entries = diagonalize_gram(gram)?;
        QuadForm::from_rationals(&entries)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn scale(&self, c: SquareClass) -> QuadForm {
        QuadForm::new(self.diag.iter().map(|&a| a.mul(c)).collect())
    }

    pub fn negate(&self) -> QuadForm {
        self.scale(SquareClass::MINUS_ONE)
    }

    pub fn direct_sum(&self, other: &QuadForm) -> QuadForm {
        let mut diag = self.diag.clone();
        diag.extend_from_slice(&other.diag);
        QuadForm::new(diag)
    }

    /// Entry order: `self[i] * other[j]` with `i` varying fastest.
    pub fn tensor(&self, other: &QuadForm) -> QuadForm {
        let mut diag = Vec::with_capacity(self.dim() * other.dim());
        for &b in &other.diag {
            for &a in &self.diag {
                diag.push(a.mul(b));
            }
        }
        QuadForm::new(diag)
    }

    pub fn determinant(&self) -> SquareClass {
        self.diag
            .iter()
            .fold(SquareClass::ONE, |acc, &a| acc.mul(a))
    }

    pub fn signature(&self) -> (usize, usize) {
        let pos = self.diag.iter().filter(|a| a.is_positive()).count();
        (pos, self.dim() - pos)
    }

    pub fn hasse_at(&self, v: Place) -> i8 {
        let mut s = 1i8;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                s *= hilbert_symbol(self.diag[i], self.diag[j], v);
            }
        }
        s
    }

    pub fn invariants(&self) -> FormInvariants {
        let hasse = relevant_places(&self.diag)
            .into_iter()
            .map(|v| (v, self.hasse_at(v)))
            .collect();
        FormInvariants {
            dim: self.dim(),
            disc: self.determinant(),
            signature: self.signature(),
            hasse,
        }
    }

    pub fn is_isotropic(&self) -> bool {
        // dim <= 1 and definite forms are settled without any symbol evaluation
        let (p, n) = self.signature();
        if self.dim() < 2 || p == 0 || n == 0 {
            return false;
        }
        self.invariants().is_isotropic()
    }

    pub fn is_isometric(&self, other: &QuadForm) -> bool {
        if self.dim() != other.dim()
            || self.signature() != other.signature()
            || self.determinant() != other.determinant()
        {
            return false;
        }
        self.invariants().same_class(&other.invariants())
    }

    /// (Witt index, anisotropic dimension).
    pub fn witt_decompose(&self) -> (usize, usize) {
        self.invariants().witt_decompose()
    }

    /// True iff `self = sub ⊥ (something)`.
    pub fn represents_subform(&self, sub: &QuadForm) -> bool {
        if sub.dim() > self.dim() {
            return false;
        }
        let (index, _) = self.direct_sum(&sub.negate()).witt_decompose();
        index >= sub.dim()
    }

    /// Value of the form at an exact coordinate vector.
    pub fn evaluate(&self, coords: &[Rational]) -> Rational {
        self.diag
            .iter()
            .zip(coords)
            .map(|(a, x)| a.to_rational() * x * x)
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

/// `<<a_1,...,a_n>> = <1,-a_1> ⊗ ... ⊗ <1,-a_n>`; entry `m` is the product of
/// `-a_i` over the set bits `i` of `m`.
pub fn pfister(slots: &[SquareClass]) -> Result<QuadForm> {
    if slots.is_empty() {
        return Err(Error::EmptySlots);
    }
    let mut form = QuadForm::new(vec![SquareClass::ONE]);
    for &a in slots {
        form = form.direct_sum(&form.scale(a.neg()));
    }
    Ok(form)
}

/// Complete isometry invariants of a nondegenerate form over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormInvariants {
    pub dim: usize,
    /// Signed determinant (no `(-1)^{n(n-1)/2}` twist).
    pub disc: SquareClass,
    pub signature: (usize, usize),
    pub hasse: BTreeMap<Place, i8>,
}

impl FormInvariants {
    pub fn hasse_at(&self, v: Place) -> i8 {
        self.hasse.get(&v).copied().unwrap_or(1)
    }

    pub fn same_class(&self, other: &FormInvariants) -> bool {
        self.dim == other.dim
            && self.disc == other.disc
            && self.signature == other.signature
            && self
                .hasse
                .keys()
                .chain(other.hasse.keys())
                .all(|&v| self.hasse_at(v) == other.hasse_at(v))
    }

    pub fn is_locally_isotropic(&self, v: Place) -> bool {
        if let Place::Real = v {
            return self.dim >= 2 && self.signature.0 > 0 && self.signature.1 > 0;
        }
        let eps = self.hasse_at(v);
        match self.dim {
            0 | 1 => false,
            2 => is_local_square(self.disc.neg(), v),
            3 => eps == hilbert_symbol(SquareClass::MINUS_ONE, self.disc.neg(), v),
            4 => {
                !is_local_square(self.disc, v)
                    || eps == hilbert_symbol(SquareClass::MINUS_ONE, SquareClass::MINUS_ONE, v)
            }
            _ => true,
        }
    }

    /// Hasse–Minkowski. The stored places cover every prime where the form has
    /// bad reduction; at all other places forms of dimension >= 3 are isotropic.
    pub fn is_isotropic(&self) -> bool {
        match self.dim {
            0 | 1 => false,
            2 => self.disc.neg().is_one(),
            _ => {
                self.is_locally_isotropic(Place::Real)
                    && self.hasse.keys().all(|&v| self.is_locally_isotropic(v))
            }
        }
    }

    /// Invariants of `q'` where `q = <1,-1> ⊥ q'`.
    pub fn split_hyperbolic_plane(&self) -> FormInvariants {
        debug_assert!(self.dim >= 2 && self.signature.0 >= 1 && self.signature.1 >= 1);
        let disc = self.disc.neg();
        let hasse = self
            .hasse
            .iter()
            .map(|(&v, &e)| (v, e * hilbert_symbol(SquareClass::MINUS_ONE, disc, v)))
            .collect();
        FormInvariants {
            dim: self.dim - 2,
            disc,
            signature: (self.signature.0 - 1, self.signature.1 - 1),
            hasse,
        }
    }

    pub fn witt_decompose(&self) -> (usize, usize) {
        let mut cur = self.clone();
        let mut index = 0;
        while cur.is_isotropic() {
            cur = cur.split_hyperbolic_plane();
            index += 1;
        }
        (index, cur.dim)
    }
}

/// A form `q1 ⊥ t·q2` over Q((t)) given by its two residue forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentForm {
    pub q1: QuadForm,
    pub q2: QuadForm,
}

impl LaurentForm {
    pub fn new(q1: QuadForm, q2: QuadForm) -> Self {
        LaurentForm { q1, q2 }
    }

    /// Norm form of the doubling `C(D, t)` of an algebra over Q with norm `n`:
    /// `n ⊗ <1,-t> = n ⊥ t·(-n)`.
    pub fn doubled_by_t(norm: &QuadForm) -> Self {
        LaurentForm::new(norm.clone(), norm.negate())
    }

    pub fn dim(&self) -> usize {
        self.q1.dim() + self.q2.dim()
    }

    /// Springer: anisotropic iff both residue forms are.
    pub fn is_isotropic(&self) -> bool {
        self.q1.is_isotropic() || self.q2.is_isotropic()
    }

    /// A nonzero anisotropic second residue means the form does not come from Q.
    pub fn second_residue_obstructs_descent(&self) -> bool {
        self.q2.dim() > 0 && !self.q2.is_isotropic()
    }
}

/// Exact symmetric Gauss reduction; returns the diagonal entries.
pub fn diagonalize_gram(gram: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let n = gram.len();
    if gram.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: gram.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        });
    }
    let mut g: Vec<Vec<Rational>> = gram.to_vec();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                g.swap(k, j);
                for row in g.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !g[k][j].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 g[k][j]
                for i in 0..n {
                    let v = g[j][i].clone();
                    g[k][i] += v;
                }
                for i in 0..n {
                    let v = g[i][j].clone();
                    g[i][k] += v;
                }
            } else {
                return Err(Error::DegenerateForm);
            }
        }
        let pivot = g[k][k].clone();
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let f = &g[i][k] / &pivot;
            for j in k..n {
                let v = &f * &g[k][j];
                g[i][j] -= v;
            }
            for j in k..n {
                let v = &f * &g[j][k];
                g[j][i] -= v;
            }
        }
        out.push(pivot);
    }
    debug_assert!(out
        .iter()
        .all(|d| !d.is_zero() && (d.is_positive() || d.is_negative())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(v: &[i64]) -> QuadForm {
        QuadForm::from_ints(v).unwrap()
    }

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    #[test]
    fn invariant_examples() {
        let h = q(&[1, -1]).invariants();
        assert_eq!((h.dim, h.disc.rep(), h.signature), (2, -1, (1, 1)));
        assert!(h.hasse.values().all(|&e| e == 1));

        let eight = q(&[1; 8]).invariants();
        assert_eq!(
            (eight.dim, eight.disc.rep(), eight.signature),
            (8, 1, (8, 0))
        );
        // product of 28 copies of (1,1)_2 = +1
        assert_eq!(eight.hasse_at(Place::Prime(2)), 1);

        let t = q(&[3, 6, 2]).invariants();
        assert_eq!((t.disc.rep(), t.signature), (1, (3, 0)));
    }

    #[test]
    fn isometry_examples() {
        assert!(q(&[1, -1]).is_isometric(&q(&[2, -2])));
        assert!(!q(&[1, 1]).is_isometric(&q(&[1, 2])));
        // <1,1> and <2,2> over Q: 2 = 1+1
        assert!(q(&[1, 1]).is_isometric(&q(&[2, 2])));
        // <1,1> vs <3,3>: 3 is not a sum of two squares
        assert!(!q(&[1, 1]).is_isometric(&q(&[3, 3])));
    }

    #[test]
    fn isotropy_examples() {
        assert!(!q(&[1, 1, 1]).is_isotropic());
        assert!(!q(&[1, -2]).is_isotropic());
        assert!(q(&[1, 1, 1, 1, 1, -7]).is_isotropic());
        assert!(q(&[1, 1, -2]).is_isotropic());
        // x^2 + y^2 = 3 z^2 has no rational solution
        assert!(!q(&[1, 1, -3]).is_isotropic());
        // sum of three squares never equals 7 w^2
        assert!(!q(&[1, 1, 1, -7]).is_isotropic());
        assert!(q(&[1, 1, 1, -6]).is_isotropic());
        assert!(!QuadForm::zero().is_isotropic());
        assert!(!q(&[5]).is_isotropic());
    }

    #[test]
    fn pfister_examples() {
        assert_eq!(pfister(&[sc(-1)]).unwrap(), q(&[1, 1]));
        assert_eq!(pfister(&[sc(-1), sc(-1), sc(-1)]).unwrap(), q(&[1; 8]));
        assert_eq!(pfister(&[sc(2), sc(3)]).unwrap(), q(&[1, -2, -3, 6]));
        assert_eq!(pfister(&[]), Err(Error::EmptySlots));
    }

    #[test]
    fn witt_examples() {
        assert_eq!(q(&[1, -1, 1, -1]).witt_decompose(), (2, 0));
        assert_eq!(q(&[1, 1, 1]).witt_decompose(), (0, 3));
        assert_eq!(q(&[1, 1, -2]).witt_decompose(), (1, 1));
    }

    #[test]
    fn subform_examples() {
        assert!(q(&[1, 1, 1, 1]).represents_subform(&q(&[1, 1])));
        assert!(!q(&[1; 8]).represents_subform(&q(&[1, -5])));
        let cayley = pfister(&[sc(-1), sc(-1), sc(-1)]).unwrap();
        assert!(cayley.represents_subform(&q(&[1, 2])));
        // <1,3> needs 3 = a sum of squares in a 6-dim complement: fine
        assert!(cayley.represents_subform(&q(&[1, 3])));
        assert!(!q(&[1, 1]).represents_subform(&q(&[1, 1, 1])));
    }

    #[test]
    fn laurent_examples() {
        let definite = q(&[1, 1, 1, 1]);
        assert!(!LaurentForm::new(definite.clone(), definite).is_isotropic());
        assert!(LaurentForm::new(q(&[1, -1]), q(&[1])).is_isotropic());
        let nq = pfister(&[sc(-1), sc(-1)]).unwrap();
        assert!(!LaurentForm::new(nq.clone(), nq.clone()).is_isotropic());
        let doubled = LaurentForm::doubled_by_t(&nq);
        assert!(!doubled.is_isotropic());
        assert!(doubled.second_residue_obstructs_descent());
    }

    #[test]
    fn constructors() {
        assert_eq!(q(&[1, 2]).scale(sc(-1)), q(&[-1, -2]));
        assert_eq!(q(&[1, -1]).tensor(&q(&[3])), q(&[3, -3]));
        assert_eq!(q(&[1]).direct_sum(&q(&[2])), q(&[1, 2]));
    }

    #[test]
    fn gram_diagonalization_handles_zero_diagonal() {
        // hyperbolic plane in the basis where both vectors are isotropic
        let g = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        let f = QuadForm::from_gram(&g).unwrap();
        assert!(f.is_isometric(&q(&[1, -1])));
        let deg = vec![vec![rat(0), rat(0)], vec![rat(0), rat(1)]];
        assert_eq!(QuadForm::from_gram(&deg), Err(Error::DegenerateForm));
    }

    #[test]
    fn hyperbolic_shift_of_hasse_symbol() {
        // q ⊗ <1,-1> is hyperbolic regardless of q
        for base in [vec![1, 2, 3], vec![-5, 7], vec![3]] {
            let f = q(&base);
            let h = f.tensor(&q(&[1, -1]));
            assert!(h.is_isometric(&QuadForm::hyperbolic(f.dim())));
            assert_eq!(h.witt_decompose(), (f.dim(), 0));
        }
    }
}
