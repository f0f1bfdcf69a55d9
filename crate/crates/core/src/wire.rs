//! JSON literals for the library's values.
//!
//! Rationals are written as JSON integers or as strings `"p/q"`.
//!
//! | value | literal |
//! |---|---|
//! | quadratic form | `{"diag":[1,-1,2]}` |
//! | Laurent form | `{"q1":[1,1],"q2":[-1,-1]}` |
//! | quadratic algebra | `{"quadratic":-1}` |
//! | cubic algebra | `{"cubic":"split"}`, `{"cubic":{"partial":5}}`, `{"cubic":{"field":[-1,-3,0]}}` |
//! | composition algebra | `{"cayley_dickson":[-1,-1,-1]}` |
//! | algebra element | `{"coords":[1,0,0,0]}` |
//! | hermitian form | `{"hermitian":{"d":-1,"diag":[1,1,1]}}` |

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{parse_rational, Rational, SquareClass};
use crate::composition::{AlgebraElement, CompositionAlgebra};
use crate::error::{Error, Result};
use crate::etale::{CubicEtale, QuadraticEtale};
use crate::hermitian::HermitianForm;
use crate::quadform::{LaurentForm, QuadForm};

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("bad {what} literal: {e}")))
}

/// A JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum RationalLit {
    Int(i64),
    Text(String),
}

impl RationalLit {
    fn value(&self) -> Result<Rational> {
        match self {
            RationalLit::Int(n) => Ok(crate::arith::rat(*n)),
            RationalLit::Text(s) => parse_rational(s),
        }
    }

    fn from_rational(r: &Rational) -> RationalLit {
        match (r.is_integer(), i64::try_from(r.numer())) {
            (true, Ok(n)) => RationalLit::Int(n),
            _ => RationalLit::Text(r.to_string()),
        }
    }
}

fn rationals(lits: &[RationalLit]) -> Result<Vec<Rational>> {
    lits.iter().map(RationalLit::value).collect()
}

fn rational_lits(rs: &[Rational]) -> Vec<RationalLit> {
    rs.iter().map(RationalLit::from_rational).collect()
}

#[derive(Deserialize)]
struct FormLit {
    diag: Vec<RationalLit>,
}

pub fn parse_form(s: &str) -> Result<QuadForm> {
    let lit: FormLit = from_value(parse_json(s)?, "form")?;
    QuadForm::from_rationals(&rationals(&lit.diag)?)
}

pub fn form_to_json(q: &QuadForm) -> Value {
    json!({"diag": q.diag.iter().map(|s| s.rep()).collect::<Vec<_>>()})
}

#[derive(Deserialize)]
struct LaurentLit {
    q1: Vec<RationalLit>,
    q2: Vec<RationalLit>,
}

pub fn parse_laurent(s: &str) -> Result<LaurentForm> {
    let lit: LaurentLit = from_value(parse_json(s)?, "Laurent form")?;
    Ok(LaurentForm::new(
        QuadForm::from_rationals(&rationals(&lit.q1)?)?,
        QuadForm::from_rationals(&rationals(&lit.q2)?)?,
    ))
}

pub fn laurent_to_json(f: &LaurentForm) -> Value {
    let reps = |q: &QuadForm| q.diag.iter().map(|s| s.rep()).collect::<Vec<_>>();
    json!({"q1": reps(&f.q1), "q2": reps(&f.q2)})
}

#[derive(Deserialize)]
struct QuadraticLit {
    quadratic: RationalLit,
}

pub fn parse_quadratic(s: &str) -> Result<QuadraticEtale> {
    let lit: QuadraticLit = from_value(parse_json(s)?, "quadratic algebra")?;
    Ok(QuadraticEtale::new(crate::arith::squarefree_class(
        &lit.quadratic.value()?,
    )?))
}

pub fn quadratic_to_json(k: &QuadraticEtale) -> Value {
    json!({"quadratic": k.d.rep()})
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CubicBody {
    Name(String),
    Partial { partial: i64 },
    Field { field: [i64; 3] },
}

#[derive(Deserialize)]
struct CubicLit {
    cubic: CubicBody,
}

pub fn parse_cubic(s: &str) -> Result<CubicEtale> {
    let lit: CubicLit = from_value(parse_json(s)?, "cubic algebra")?;
    match lit.cubic {
        CubicBody::Name(n) if n == "split" => Ok(CubicEtale::Split),
        CubicBody::Name(n) => Err(Error::Parse(format!("unknown cubic {n:?}"))),
        CubicBody::Partial { partial } => CubicEtale::partial(partial),
        CubicBody::Field {
            field: [c0, c1, c2],
        } => CubicEtale::field(c0, c1, c2),
    }
}

pub fn cubic_to_json(l: &CubicEtale) -> Value {
    match l {
        CubicEtale::Split => json!({"cubic": "split"}),
        CubicEtale::PartialSplit(e) => json!({"cubic": {"partial": e.rep()}}),
        CubicEtale::Field(f) => json!({"cubic": {"field": [f.c0, f.c1, f.c2]}}),
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraLit {
    cayley_dickson: Vec<RationalLit>,
}

pub fn parse_algebra(s: &str) -> Result<CompositionAlgebra> {
    let lit: AlgebraLit = from_value(parse_json(s)?, "composition algebra")?;
    CompositionAlgebra::new(rationals(&lit.cayley_dickson)?)
}

pub fn algebra_to_json(a: &CompositionAlgebra) -> Value {
    serde_json::to_value(AlgebraLit {
        cayley_dickson: rational_lits(a.params()),
    })
    .expect("literal serializes")
}

#[derive(Serialize, Deserialize)]
struct ElementLit {
    coords: Vec<RationalLit>,
}

pub fn parse_element(s: &str) -> Result<AlgebraElement> {
    let lit: ElementLit = from_value(parse_json(s)?, "element")?;
    Ok(AlgebraElement::new(rationals(&lit.coords)?))
}

pub fn element_to_json(x: &AlgebraElement) -> Value {
    serde_json::to_value(ElementLit {
        coords: rational_lits(&x.coords),
    })
    .expect("literal serializes")
}

#[derive(Serialize, Deserialize)]
struct HermitianBody {
    d: i64,
    diag: [RationalLit; 3],
}

#[derive(Serialize, Deserialize)]
struct HermitianLit {
    hermitian: HermitianBody,
}

pub fn parse_hermitian(s: &str) -> Result<HermitianForm> {
    let lit: HermitianLit = from_value(parse_json(s)?, "hermitian form")?;
    let [a, b, c] = &lit.hermitian.diag;
    HermitianForm::new(
        SquareClass::from_int(lit.hermitian.d)?,
        [a.value()?, b.value()?, c.value()?],
    )
}

pub fn hermitian_to_json(h: &HermitianForm) -> Value {
    let [a, b, c] = &h.diag;
    serde_json::to_value(HermitianLit {
        hermitian: HermitianBody {
            d: h.d.rep(),
            diag: [
                RationalLit::from_rational(a),
                RationalLit::from_rational(b),
                RationalLit::from_rational(c),
            ],
        },
    })
    .expect("literal serializes")
}
