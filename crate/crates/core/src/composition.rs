//! Cayley–Dickson composition algebras over Q.
//!
//! `params = [a, b, c]` builds `Q → Q(√a) → (a, b) → C((a, b), c)`; each doubling
//! `D ⊕ D·u` uses `(x + yu)(z + wu) = (xz + c·σ(w)y) + (wx + yσ(z))u`, so that
//! `N(x + yu) = N(x) − c·N(y)`. Coordinates follow the doubling basis: the basis
//! of `D`, then that basis times `u`.

use num_traits::{One, Zero};

use crate::arith::{rat, square_class_candidates, squarefree_class, Rational, SquareClass};
use crate::error::{Error, Result};
use crate::etale::QuadraticEtale;
use crate::hermitian::HermitianForm;
use crate::quadform::{pfister, QuadForm};

/// Basis indices `(i, j, k)` with `(e_i e_j) e_k ≠ e_i (e_j e_k)` in every octonion algebra.
pub const ASSOCIATOR_WITNESS: (usize, usize, usize) = (1, 2, 4);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompositionAlgebra {
    params: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        AlgebraElement { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        AlgebraElement::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

fn conj_rec(x: &[Rational]) -> Vec<Rational> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = conj_rec(&x[..h]);
    out.extend(x[h..].iter().map(|v| -v));
    out
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mul_rec(params: &[Rational], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let Some((c, inner)) = params.split_last() else {
        return vec![&x[0] * &y[0]];
    };
    let h = x.len() / 2;
    let (x1, x2) = x.split_at(h);
    let (u, v) = y.split_at(h);
    let cv = mul_rec(inner, &conj_rec(v), x2);
    let first = add_vec(
        &mul_rec(inner, x1, u),
        &cv.iter().map(|t| c * t).collect::<Vec<_>>(),
    );
    let second = add_vec(&mul_rec(inner, v, x1), &mul_rec(inner, x2, &conj_rec(u)));
    let mut out = first;
    out.extend(second);
    out
}

impl CompositionAlgebra {
    pub fn new(params: Vec<Rational>) -> Result<Self> {
        if params.len() > 3 {
            return Err(Error::TooManyParams(params.len()));
        }
        if params.iter().any(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(CompositionAlgebra { params })
    }

    pub fn from_ints(params: &[i64]) -> Result<Self> {
        CompositionAlgebra::new(params.iter().map(|&p| rat(p)).collect())
    }

    /// The anisotropic octonions `(−1, −1, −1)`.
    pub fn cayley() -> Self {
        CompositionAlgebra::from_ints(&[-1, -1, -1]).unwrap()
    }

    pub fn split_octonions() -> Self {
        CompositionAlgebra::from_ints(&[1, 1, 1]).unwrap()
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        1 << self.params.len()
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(0)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::new((0..self.dim()).map(|j| rat((i == j) as i64)).collect())
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgebraElement::new(mul_rec(
            &self.params,
            &x.coords,
            &y.coords,
        )))
    }

    pub fn conjugate(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(AlgebraElement::new(conj_rec(&x.coords)))
    }

    /// `x·σ(x)`, which is a scalar.
    pub fn norm(&self, x: &AlgebraElement) -> Result<Rational> {
        let p = self.multiply(x, &self.conjugate(x)?)?;
        debug_assert!(p.coords[1..].iter().all(Zero::is_zero));
        Ok(p.coords[0].clone())
    }

    /// Polar form `N(x + y) − N(x) − N(y)`.
    pub fn trace_bilinear(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Rational> {
        Ok(self.norm(&x.add(y))? - self.norm(x)? - self.norm(y)?)
    }

    /// `(xy)z − x(yz)`.
    pub fn associator(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        z: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let left = self.multiply(&self.multiply(x, y)?, z)?;
        let right = self.multiply(x, &self.multiply(y, z)?)?;
        Ok(left.sub(&right))
    }

    pub fn param_classes(&self) -> Vec<SquareClass> {
        self.params
            .iter()
            .map(|p| squarefree_class(p).expect("params are nonzero"))
            .collect()
    }

    /// The Pfister form `<<params>>` (`<1>` for Q itself).
    pub fn norm_form(&self) -> QuadForm {
        if self.params.is_empty() {
            return QuadForm::new(vec![SquareClass::ONE]);
        }
        pfister(&self.param_classes()).expect("nonempty slots")
    }

    pub fn is_split(&self) -> Result<bool> {
        if self.params.is_empty() {
            return Err(Error::RankOneAlgebra);
        }
        Ok(self.norm_form().is_isotropic())
    }

    /// Isomorphism of composition algebras is isometry of their norm forms.
    pub fn is_isomorphic(&self, other: &CompositionAlgebra) -> bool {
        self.dim() == other.dim() && self.norm_form().is_isometric(&other.norm_form())
    }

    fn require_octonion(&self) -> Result<()> {
        if self.dim() != 8 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                got: self.dim(),
            });
        }
        Ok(())
    }

    /// Whether `Q(√d)` is a unital subalgebra, i.e. `<1, −d>` is a subform of the norm.
    pub fn embeds_quadratic(&self, kp: &QuadraticEtale) -> Result<bool> {
        self.require_octonion()?;
        Ok(self.norm_form().represents_subform(&kp.norm_form()))
    }

    /// If the quaternion algebra `q` is a subalgebra, a scalar `c` with
    /// `self ≅ C(q, c)`, searched over squarefree `|c| ≤ bound`.
    pub fn embeds_quaternion(
        &self,
        q: &CompositionAlgebra,
        bound: u64,
    ) -> Result<Option<SquareClass>> {
        self.require_octonion()?;
        if q.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: q.dim(),
            });
        }
        let norm = self.norm_form();
        if !norm.represents_subform(&q.norm_form()) {
            return Ok(None);
        }
        let slots = q.param_classes();
        for c in square_class_candidates(bound) {
            let candidate = pfister(&[slots[0], slots[1], c]).expect("three slots");
            if candidate.is_isometric(&norm) {
                return Ok(Some(c));
            }
        }
        Err(Error::WitnessSearchExhausted { bound })
    }

    /// Quaternion algebra `(a, b)` from square classes.
    pub fn quaternion(a: SquareClass, b: SquareClass) -> CompositionAlgebra {
        CompositionAlgebra {
            params: vec![a.to_rational(), b.to_rational()],
        }
    }
}

/// A scalar `c` with `(d1, c) ≅ (d2, c) ≅ q`, searched over squarefree `|c| ≤ bound`.
pub fn common_slot(
    d1: SquareClass,
    d2: SquareClass,
    q: &CompositionAlgebra,
    bound: u64,
) -> Option<SquareClass> {
    let target = q.norm_form();
    square_class_candidates(bound).into_iter().find(|&c| {
        pfister(&[d1, c]).unwrap().is_isometric(&target)
            && pfister(&[d2, c]).unwrap().is_isometric(&target)
    })
}

/// The octonion algebra `C(Q(√d), E, h)` with doubling parameters `(d, b, c)`
/// where `h ≅ <−b, −c, bc>`.
pub fn from_hermitian(h: &HermitianForm) -> Result<CompositionAlgebra> {
    let (b, c) = h.normalize()?;
    CompositionAlgebra::new(vec![h.d.to_rational(), b.to_rational(), c.to_rational()])
}

/// `true` iff `x` is the identity element.
pub fn is_unit_element(x: &AlgebraElement) -> bool {
    x.coords.first().is_some_and(One::is_one) && x.coords[1..].iter().all(Zero::is_zero)
}
