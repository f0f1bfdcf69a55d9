//! Diagonal rank-3 hermitian forms over `k′ = Q(√d)`, the quadratic invariants
//! of their adjoint involutions, and the search for the scalar `λ` of the
//! embedding criterion for tori of type (k′, l).

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    hilbert_symbol, is_rational_square, rat, relevant_places, squarefree_class, Rational,
    SquareClass,
};
use crate::error::{Error, Result};
use crate::etale::CubicEtale;
use crate::quadform::{pfister, QuadForm};

/// `<a1, a2, a3>` over `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    pub d: SquareClass,
    pub diag: [Rational; 3],
}

/// `x + y√d`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct QuadNum {
    x: Rational,
    y: Rational,
}

impl QuadNum {
    fn zero() -> Self {
        QuadNum {
            x: Rational::zero(),
            y: Rational::zero(),
        }
    }

    fn real(x: Rational) -> Self {
        QuadNum {
            x,
            y: Rational::zero(),
        }
    }

    fn add(&self, o: &QuadNum) -> QuadNum {
        QuadNum {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }

    fn mul(&self, o: &QuadNum, d: &Rational) -> QuadNum {
        QuadNum {
            x: &self.x * &o.x + d * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }
}

type Mat3 = [[QuadNum; 3]; 3];

fn zero_mat() -> Mat3 {
    std::array::from_fn(|_| std::array::from_fn(|_| QuadNum::zero()))
}

fn trace_of_product(a: &Mat3, b: &Mat3, d: &Rational) -> QuadNum {
    let mut t = QuadNum::zero();
    for i in 0..3 {
        for k in 0..3 {
            t = t.add(&a[i][k].mul(&b[k][i], d));
        }
    }
    t
}

impl HermitianForm {
    pub fn new(d: SquareClass, diag: [Rational; 3]) -> Result<Self> {
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        Ok(HermitianForm { d, diag })
    }

    pub fn from_ints(d: i64, diag: [i64; 3]) -> Result<Self> {
        HermitianForm::new(SquareClass::from_int(d)?, diag.map(rat))
    }

    /// `<−b, −c, bc>`.
    pub fn from_slots(d: SquareClass, b: SquareClass, c: SquareClass) -> Self {
        HermitianForm {
            d,
            diag: [-b.to_rational(), -c.to_rational(), (b.mul(c)).to_rational()],
        }
    }

    fn entry_classes(&self) -> [SquareClass; 3] {
        self.diag
            .clone()
            .map(|a| squarefree_class(&a).expect("entries are nonzero"))
    }

    /// `a1 a2 a3` is a norm from `Q(√d)`.
    pub fn has_trivial_discriminant(&self) -> bool {
        let product = squarefree_class(&(&self.diag[0] * &self.diag[1] * &self.diag[2]))
            .expect("entries are nonzero");
        relevant_places(&[self.d, product])
            .into_iter()
            .all(|v| hilbert_symbol(self.d, product, v) == 1)
    }

    /// `(b, c)` with `h ≅ <−b, −c, bc>`: `b = −a1`, `c = −a2`, and `bc ≡ a3`
    /// modulo norms because the discriminant is trivial.
    pub fn normalize(&self) -> Result<(SquareClass, SquareClass)> {
        if !self.has_trivial_discriminant() {
            return Err(Error::NontrivialDiscriminant);
        }
        let [a1, a2, _] = self.entry_classes();
        Ok((a1.neg(), a2.neg()))
    }

    /// The 6-dimensional quadratic form `x ↦ h(x, x)` over Q, `diag(h) ⊗ <1, −d>`.
    pub fn trace_form(&self) -> QuadForm {
        QuadForm::new(self.entry_classes().to_vec())
            .tensor(&QuadForm::new(vec![SquareClass::ONE, self.d.neg()]))
    }

    /// `<−b, −c, bc>`.
    pub fn q_tau(&self) -> Result<QuadForm> {
        let (b, c) = self.normalize()?;
        Ok(QuadForm::new(vec![b.neg(), c.neg(), b.mul(c)]))
    }

    /// `<<d, b, c>>`.
    pub fn pi_form(&self) -> Result<QuadForm> {
        let (b, c) = self.normalize()?;
        pfister(&[self.d, b, c])
    }

    pub fn is_distinguished(&self) -> Result<bool> {
        Ok(self.pi_form()?.is_isotropic())
    }

    /// The 9-dimensional form `X ↦ Trd(X²)` on the elements of `M3(Q(√d))`
    /// fixed by the adjoint involution `X ↦ H⁻¹ X̄ᵀ H`, computed from an explicit basis.
    pub fn involution_trace_form(&self) -> Result<QuadForm> {
        if !self.has_trivial_discriminant() {
            return Err(Error::NontrivialDiscriminant);
        }
        QuadForm::from_gram(&self.involution_gram())
    }

    /// Gram matrix of `Trd(XY)` on the symmetric basis
    /// `E_ii`, `E_ij/a_i + E_ji/a_j`, `√d (E_ij/a_i − E_ji/a_j)`.
    pub fn involution_gram(&self) -> Vec<Vec<Rational>> {
        let dr = self.d.to_rational();
        let mut basis: Vec<Mat3> = Vec::with_capacity(9);
        for i in 0..3 {
            let mut m = zero_mat();
            m[i][i] = QuadNum::real(rat(1));
            basis.push(m);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                let (ai, aj) = (&self.diag[i], &self.diag[j]);
                let mut m = zero_mat();
                m[i][j] = QuadNum::real(ai.recip());
                m[j][i] = QuadNum::real(aj.recip());
                basis.push(m);
                let mut m = zero_mat();
                m[i][j] = QuadNum {
                    x: Rational::zero(),
                    y: ai.recip(),
                };
                m[j][i] = QuadNum {
                    x: Rational::zero(),
                    y: -aj.recip(),
                };
                basis.push(m);
            }
        }
        debug_assert!(basis.iter().all(|x| self.is_symmetric(x)));
        basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| {
                        let t = trace_of_product(x, y, &dr);
                        assert!(
                            t.y.is_zero(),
                            "reduced trace of symmetric elements is rational"
                        );
                        t.x
                    })
                    .collect()
            })
            .collect()
    }

    fn is_symmetric(&self, x: &Mat3) -> bool {
        // (H⁻¹ X̄ᵀ H)_ij = conj(X_ji) a_j / a_i
        (0..3).all(|i| {
            (0..3).all(|j| {
                let s = &self.diag[j] / &self.diag[i];
                let conj = QuadNum {
                    x: &x[j][i].x * &s,
                    y: -&x[j][i].y * &s,
                };
                conj == x[i][j]
            })
        })
    }
}

/// `<<d>> ⊗ <δ>·t  ≅  <<d>> ⊗ <−b, −c, bc>`.
pub fn check_condition_ii(
    d: SquareClass,
    delta: SquareClass,
    t_form: &QuadForm,
    b: SquareClass,
    c: SquareClass,
) -> bool {
    if t_form.dim() != 3 {
        return false;
    }
    let dd = pfister(&[d]).expect("one slot");
    let lhs = dd.tensor(&t_form.scale(delta));
    let rhs = dd.tensor(&QuadForm::new(vec![b.neg(), c.neg(), b.mul(c)]));
    lhs.is_isometric(&rhs)
}

/// A certified `λ`: integer coordinates and its trace-transfer form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaWitness {
    pub lambda: [i64; 3],
    pub transfer_form: QuadForm,
}

/// `0, 1, −1, 2, −2, …` position of an integer.
fn coordinate_rank(x: i64) -> u64 {
    if x > 0 {
        2 * x as u64 - 1
    } else {
        2 * x.unsigned_abs()
    }
}

/// Integer triples of sup-norm exactly `h`, in the search order.
pub fn lambda_candidates(h: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for x in -h..=h {
        for y in -h..=h {
            for z in -h..=h {
                if x.abs().max(y.abs()).max(z.abs()) == h {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out.sort_by_key(|v| v.map(coordinate_rank));
    out
}

/// Tests a single `λ`; `None` if it is not a unit, its norm is not a square, or
/// condition (ii) fails.
pub fn test_lambda(
    l: &CubicEtale,
    d: SquareClass,
    b: SquareClass,
    c: SquareClass,
    lambda: [i64; 3],
) -> Option<LambdaWitness> {
    let coords: Vec<Rational> = lambda.iter().map(|&x| rat(x)).collect();
    let n = l.norm(&coords).ok()?;
    if n.is_zero() || !is_rational_square(&n) {
        return None;
    }
    let t = l.trace_transfer_form(&coords).ok()?;
    check_condition_ii(d, l.discriminant(), &t, b, c).then_some(LambdaWitness {
        lambda,
        transfer_form: t,
    })
}

/// First `λ` (by height, then coordinate order) with square norm satisfying
/// condition (ii) for `h ≅ <−b, −c, bc>` over `Q(√d)`; `None` once height is exhausted.
pub fn lambda_witness_search(
    l: &CubicEtale,
    d: SquareClass,
    b: SquareClass,
    c: SquareClass,
    height: u32,
) -> Option<LambdaWitness> {
    (1..=height as i64).find_map(|h| {
        lambda_candidates(h)
            .into_par_iter()
            .find_map_first(|lambda| test_lambda(l, d, b, c, lambda))
    })
}
