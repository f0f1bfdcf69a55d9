//! Quadratic and cubic étale algebras over Q, their discriminants, Galois
//! images in W0 and the trace-transfer forms `x ↦ Tr(λx²)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{is_rational_square, rat, squarefree_class, Rational, SquareClass};
use crate::error::{Error, Result};
use crate::quadform::QuadForm;
use crate::weyl::{Perm, Subgroup};

/// `Q(√d)`, with `d = 1` standing for `Q × Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticEtale {
    pub d: SquareClass,
}

impl QuadraticEtale {
    pub fn new(d: SquareClass) -> Self {
        QuadraticEtale { d }
    }

    pub fn from_int(d: i64) -> Result<Self> {
        Ok(QuadraticEtale::new(SquareClass::from_int(d)?))
    }

    pub fn is_split(&self) -> bool {
        self.d.is_one()
    }

    /// Norm form `<1, -d>`.
    pub fn norm_form(&self) -> QuadForm {
        QuadForm::new(vec![SquareClass::ONE, self.d.neg()])
    }
}

/// Monic cubic `x³ + c2 x² + c1 x + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonicCubic {
    pub c0: i64,
    pub c1: i64,
    pub c2: i64,
}

impl MonicCubic {
    pub fn eval(&self, x: i64) -> i128 {
        let x = x as i128;
        ((x + self.c2 as i128) * x + self.c1 as i128) * x + self.c0 as i128
    }

    /// `18bcd − 4b³d + b²c² − 4c³ − 27d²` for `x³ + bx² + cx + d`.
    pub fn discriminant(&self) -> BigInt {
        let b = BigInt::from(self.c2);
        let c = BigInt::from(self.c1);
        let d = BigInt::from(self.c0);
        BigInt::from(18) * &b * &c * &d - BigInt::from(4) * &b * &b * &b * &d + &b * &b * &c * &c
            - BigInt::from(4) * &c * &c * &c
            - BigInt::from(27) * &d * &d
    }

    /// An integer root, if any (a rational root of a monic integer cubic is an
    /// integer dividing the constant term).
    pub fn integer_root(&self) -> Option<i64> {
        if self.c0 == 0 {
            return Some(0);
        }
        let n = self.c0.unsigned_abs();
        let mut k = 1u64;
        while k.saturating_mul(k) <= n {
            if n.is_multiple_of(k) {
                for cand in [k, n / k] {
                    let cand = cand as i64;
                    for r in [cand, -cand] {
                        if self.eval(r) == 0 {
                            return Some(r);
                        }
                    }
                }
            }
            k += 1;
        }
        None
    }

    /// The cubic `f(x − s)`, whose roots are those of `f` shifted by `s`.
    pub fn shifted(&self, s: i64) -> MonicCubic {
        // (x−s)³ + c2(x−s)² + c1(x−s) + c0
        let (c0, c1, c2) = (self.c0, self.c1, self.c2);
        MonicCubic {
            c2: c2 - 3 * s,
            c1: 3 * s * s - 2 * c2 * s + c1,
            c0: -s * s * s + c2 * s * s - c1 * s + c0,
        }
    }
}

/// A cubic étale algebra up to isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicEtale {
    /// `Q × Q × Q`
    Split,
    /// `Q × Q(√e)` with `e` not a square.
    PartialSplit(SquareClass),
    /// `Q[x]/(f)` for an irreducible monic cubic `f`.
    Field(MonicCubic),
}

impl CubicEtale {
    pub fn partial(e: i64) -> Result<Self> {
        let class = SquareClass::from_int(e)?;
        if class.is_one() {
            return Err(Error::TrivialPartialClass(e));
        }
        Ok(CubicEtale::PartialSplit(class))
    }

    /// `Q[x]/(x³ + c2 x² + c1 x + c0)`; rejects reducible or singular cubics.
    pub fn field(c0: i64, c1: i64, c2: i64) -> Result<Self> {
        let f = MonicCubic { c0, c1, c2 };
        if let Some(root) = f.integer_root() {
            return Err(Error::ReduciblePolynomial { c0, c1, c2, root });
        }
        if f.discriminant().is_zero() {
            return Err(Error::SingularPolynomial { c0, c1, c2 });
        }
        Ok(CubicEtale::Field(f))
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CubicEtale::Field(_))
    }

    /// Multiplication-by-`λ` matrix in the coordinate basis (columns are images).
    pub fn multiplication_matrix(&self, lambda: &[Rational]) -> Result<[[Rational; 3]; 3]> {
        if lambda.len() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: lambda.len(),
            });
        }
        let z = Rational::zero;
        let mut m: [[Rational; 3]; 3] = Default::default();
        match self {
            CubicEtale::Split => {
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] = if i == j { lambda[i].clone() } else { z() };
                    }
                }
            }
            CubicEtale::PartialSplit(e) => {
                let e = e.to_rational();
                let (a, p, q) = (&lambda[0], &lambda[1], &lambda[2]);
                m = [
                    [a.clone(), z(), z()],
                    [z(), p.clone(), &e * q],
                    [z(), q.clone(), p.clone()],
                ];
            }
            CubicEtale::Field(f) => {
                // columns λ·θ^j, reducing θ³ = −c0 − c1θ − c2θ²
                let mut col: [Rational; 3] =
                    [lambda[0].clone(), lambda[1].clone(), lambda[2].clone()];
                for j in 0..3 {
                    for i in 0..3 {
                        m[i][j] = col[i].clone();
                    }
                    let top = col[2].clone();
                    col = [
                        -&top * rat(f.c0),
                        &col[0] - &top * rat(f.c1),
                        &col[1] - &top * rat(f.c2),
                    ];
                }
            }
        }
        Ok(m)
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        let m = self.multiplication_matrix(x)?;
        if y.len() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: y.len(),
            });
        }
        Ok((0..3)
            .map(|i| (0..3).map(|j| &m[i][j] * &y[j]).sum())
            .collect())
    }

    pub fn trace(&self, x: &[Rational]) -> Result<Rational> {
        let m = self.multiplication_matrix(x)?;
        Ok(&m[0][0] + &m[1][1] + &m[2][2])
    }

    pub fn norm(&self, x: &[Rational]) -> Result<Rational> {
        let m = self.multiplication_matrix(x)?;
        Ok(det3(&m))
    }

    pub fn one(&self) -> Vec<Rational> {
        match self {
            CubicEtale::Split => vec![rat(1), rat(1), rat(1)],
            CubicEtale::PartialSplit(_) => vec![rat(1), rat(1), rat(0)],
            CubicEtale::Field(_) => vec![rat(1), rat(0), rat(0)],
        }
    }

    /// Gram matrix of `(x, y) ↦ Tr(λxy)` on the coordinate basis.
    pub fn trace_transfer_gram(&self, lambda: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        if self.norm(lambda)?.is_zero() {
            return Err(Error::NonUnitLambda);
        }
        let basis: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| rat((i == j) as i64)).collect())
            .collect();
        let mut gram = vec![vec![Rational::zero(); 3]; 3];
        for i in 0..3 {
            let lb = self.multiply(lambda, &basis[i])?;
            for j in 0..3 {
                gram[i][j] = self.trace(&self.multiply(&lb, &basis[j])?)?;
            }
        }
        Ok(gram)
    }

    /// The 3-dimensional form `x ↦ Tr(λx²)`.
    pub fn trace_transfer_form(&self, lambda: &[Rational]) -> Result<QuadForm> {
        QuadForm::from_gram(&self.trace_transfer_gram(lambda)?)
    }

    pub fn norm_is_square(&self, lambda: &[Rational]) -> Result<bool> {
        let n = self.norm(lambda)?;
        if n.is_zero() {
            return Err(Error::NonUnitLambda);
        }
        Ok(is_rational_square(&n))
    }

    /// Square class of the discriminant.
    pub fn discriminant(&self) -> SquareClass {
        match self {
            CubicEtale::Split => SquareClass::ONE,
            CubicEtale::PartialSplit(e) => *e,
            CubicEtale::Field(f) => squarefree_class(&Rational::from_integer(f.discriminant()))
                .expect("an irreducible cubic has nonzero discriminant"),
        }
    }

    /// Image of the Galois action on the three roots, as a subgroup of S3.
    pub fn permutation_image(&self) -> Vec<Perm> {
        match self {
            CubicEtale::Split => vec![Perm::IDENTITY],
            CubicEtale::PartialSplit(_) => vec![Perm::IDENTITY, Perm::SWAP12],
            CubicEtale::Field(_) if self.discriminant().is_one() => Subgroup::a3(),
            CubicEtale::Field(_) => Perm::all().to_vec(),
        }
    }
}

/// `δ` of a cubic étale algebra.
pub fn cubic_discriminant(l: &CubicEtale) -> SquareClass {
    l.discriminant()
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

impl fmt::Display for CubicEtale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicEtale::Split => write!(f, "split"),
            CubicEtale::PartialSplit(e) => write!(f, "partial:{e}"),
            CubicEtale::Field(c) => write!(f, "field:{},{},{}", c.c0, c.c1, c.c2),
        }
    }
}

impl FromStr for CubicEtale {
    type Err = Error;

    /// `split`, `partial:e` or `field:c0,c1,c2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "split" {
            return Ok(CubicEtale::Split);
        }
        let int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in cubic spec")))
        };
        if let Some(e) = s.strip_prefix("partial:") {
            return CubicEtale::partial(int(e)?);
        }
        if let Some(coeffs) = s.strip_prefix("field:") {
            let c: Vec<i64> = coeffs.split(',').map(int).collect::<Result<_>>()?;
            if c.len() != 3 {
                return Err(Error::Parse(format!(
                    "field cubic needs c0,c1,c2, got {coeffs:?}"
                )));
            }
            return CubicEtale::field(c[0], c[1], c[2]);
        }
        Err(Error::Parse(format!(
            "cubic spec {s:?} is not split, partial:e or field:c0,c1,c2"
        )))
    }
}

/// The couple `(k′, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusType {
    pub kprime: QuadraticEtale,
    pub l: CubicEtale,
}

impl TorusType {
    pub fn new(kprime: QuadraticEtale, l: CubicEtale) -> Self {
        TorusType { kprime, l }
    }
}

/// Image of Galois in Z/2 × S3 for the type `(k′, l)`.
pub fn galois_image(t: &TorusType) -> Result<Subgroup> {
    let perms = t.l.permutation_image();
    let z2 = !t.kprime.is_split();
    let delta = t.l.discriminant();
    if z2 && perms.len() > 1 && delta == t.kprime.d {
        Subgroup::graph(&perms)
    } else {
        Subgroup::product(z2, &perms)
    }
}

/// Convenience for element literals.
pub fn element(coords: &[i64]) -> Vec<Rational> {
    coords.iter().map(|&c| rat(c)).collect()
}

impl CubicEtale {
    /// Whether `λ` is a unit.
    pub fn is_unit(&self, lambda: &[Rational]) -> Result<bool> {
        Ok(!self.norm(lambda)?.is_zero())
    }
}
