//! Decision procedures for the existence of a maximal torus of type (k′, l) in
//! the automorphism group of an octonion algebra.
//!
//! Over Q a complete rule always applies: split algebras admit every type (R1),
//! anisotropic ones admit none with split k′ (R2), and otherwise the Hasse
//! principle reduces to the real place (R3). Independent criteria run as
//! crosschecks and any disagreement is reported as an error.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{
    hilbert_symbol, relevant_places, square_class_candidates, Rational, SquareClass,
};
use crate::composition::CompositionAlgebra;
use crate::error::{Error, Result};
use crate::etale::{galois_image, CubicEtale, QuadraticEtale, TorusType};
use crate::hermitian::{lambda_witness_search, LambdaWitness};
use crate::quadform::{pfister, LaurentForm, QuadForm};
use crate::weyl::verify_h1_vanishing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    #[serde(rename = "YES")]
    Yes,
    #[serde(rename = "NO")]
    No,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    /// Process exit code of the CLI.
    pub fn exit_code(self) -> i32 {
        match self {
            Decision::Yes => 0,
            Decision::No => 3,
            Decision::Inconclusive => 4,
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
            Decision::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub rule: String,
    pub decision: Decision,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub decision: Decision,
    pub rule: String,
    pub witnesses: BTreeMap<String, Value>,
    pub crosschecks: Vec<CrossCheck>,
}

impl Verdict {
    fn new(decision: Decision, rule: &str) -> Self {
        Verdict {
            decision,
            rule: rule.to_string(),
            witnesses: BTreeMap::new(),
            crosschecks: Vec::new(),
        }
    }

    fn witness(mut self, key: &str, value: Value) -> Self {
        self.witnesses.insert(key.to_string(), value);
        self
    }

    pub fn crosscheck(&self, rule: &str) -> Option<Decision> {
        self.crosschecks
            .iter()
            .find(|c| c.rule == rule)
            .map(|c| c.decision)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("verdicts serialize")
    }
}

pub mod rules {
    pub const SPLIT: &str = "R1";
    pub const SPLIT_KPRIME: &str = "R2";
    pub const HASSE: &str = "R3";
    pub const QUADRATIC_SUBALGEBRA: &str = "quadratic-subalgebra";
    pub const EQUAL_DISCRIMINANT: &str = "equal-discriminant";
    pub const BIQUADRATIC: &str = "biquadratic";
    pub const LAMBDA_WITNESS: &str = "lambda-witness";
    pub const REAL_ANISOTROPIC: &str = "real-anisotropic";
    pub const RESIDUE: &str = "residue";
    pub const SPLIT_CUBIC: &str = "split-cubic";
    pub const ODD_DEGREE: &str = "odd-degree";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest sup-norm of `λ` tried by the witness search.
    pub height: u32,
    /// Largest `|c|` tried by slot searches.
    pub slot_bound: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            height: 10,
            slot_bound: 30,
        }
    }
}

/// Slots `(b, c)` with `<<d, b, c>> ≅ N_C`, i.e. `C ≅ C(k′, E, h)` for
/// `h ≅ <−b, −c, bc>`.
pub fn hermitian_slots(
    c_alg: &CompositionAlgebra,
    d: SquareClass,
    bound: u64,
) -> Option<(SquareClass, SquareClass)> {
    let norm = c_alg.norm_form();
    let candidates = square_class_candidates(bound);
    for &b in &candidates {
        let quaternion = pfister(&[d, b]).expect("two slots");
        if !norm.represents_subform(&quaternion) {
            continue;
        }
        if let Some(&c) = candidates.iter().find(|&&c| {
            pfister(&[d, b, c])
                .expect("three slots")
                .is_isometric(&norm)
        }) {
            return Some((b, c));
        }
    }
    None
}

/// For `l = Q × l₂`: a scalar `c` with `(k1, c) ≅ (k2, c)` and that quaternion
/// algebra inside `C`.
pub fn biquadratic_slot(
    c_alg: &CompositionAlgebra,
    k1: SquareClass,
    k2: SquareClass,
    bound: u64,
) -> Option<SquareClass> {
    let norm = c_alg.norm_form();
    square_class_candidates(bound)
        .into_par_iter()
        .find_first(|&c| {
            let q1 = pfister(&[k1, c]).unwrap();
            q1.is_isometric(&pfister(&[k2, c]).unwrap()) && norm.represents_subform(&q1)
        })
}

/// `true` iff `(k1, c)_v = (k2, c)_v` at every place, the certificate for a
/// common slot.
pub fn common_slot_certificate(k1: SquareClass, k2: SquareClass, c: SquareClass) -> bool {
    relevant_places(&[k1, k2, c])
        .into_iter()
        .all(|v| hilbert_symbol(k1, c, v) == hilbert_symbol(k2, c, v))
}

fn class_json(s: SquareClass) -> Value {
    json!(s.rep())
}

fn form_json(q: &QuadForm) -> Value {
    json!(q.diag.iter().map(|s| s.rep()).collect::<Vec<_>>())
}

fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        json!(r.numer().to_i64())
    } else {
        json!(r.to_string())
    }
}

fn lambda_json(w: &LambdaWitness) -> Value {
    json!({"lambda": w.lambda, "transfer_form": form_json(&w.transfer_form)})
}

/// Does `Aut(C)` over Q contain a maximal torus of type `t`?
pub fn decide_over_q(
    c_alg: &CompositionAlgebra,
    t: &TorusType,
    cfg: &EngineConfig,
) -> Result<Verdict> {
    if c_alg.dim() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            got: c_alg.dim(),
        });
    }
    let d = t.kprime.d;
    let delta = t.l.discriminant();
    let split = c_alg.is_split()?;

    let mut verdict = if split {
        Verdict::new(Decision::Yes, rules::SPLIT).witness(
            "doubling_params",
            json!(c_alg.params().iter().map(rational_json).collect::<Vec<_>>()),
        )
    } else if d.is_one() {
        Verdict::new(Decision::No, rules::SPLIT_KPRIME)
    } else {
        Verdict::new(
            Decision::from_bool(!d.is_positive() && delta.is_positive()),
            rules::HASSE,
        )
    };
    verdict = verdict
        .witness("d", class_json(d))
        .witness("delta", class_json(delta));

    let mut checks: Vec<(CrossCheck, Vec<(String, Value)>)> = Vec::new();

    // necessary condition: k′ is a subalgebra
    let embeds_kprime = c_alg.embeds_quadratic(&t.kprime)?;
    if !embeds_kprime {
        checks.push((
            CrossCheck {
                rule: rules::QUADRATIC_SUBALGEBRA.into(),
                decision: Decision::No,
            },
            vec![],
        ));
    }

    if delta == d && !split {
        checks.push((
            CrossCheck {
                rule: rules::EQUAL_DISCRIMINANT.into(),
                decision: Decision::No,
            },
            vec![],
        ));
    }

    if !t.l.is_field() {
        let e = delta;
        let (k1, k2) = (d.mul(e), d);
        let both = c_alg.embeds_quadratic(&QuadraticEtale::new(k1))?
            && c_alg.embeds_quadratic(&QuadraticEtale::new(k2))?;
        let mut extra = vec![(
            "biquadratic_fields".to_string(),
            json!([k1.rep(), k2.rep()]),
        )];
        if both {
            if let Some(c) = biquadratic_slot(c_alg, k1, k2, cfg.slot_bound) {
                extra.push(("common_slot".to_string(), class_json(c)));
            }
        }
        checks.push((
            CrossCheck {
                rule: rules::BIQUADRATIC.into(),
                decision: Decision::from_bool(both),
            },
            extra,
        ));
    }

    if embeds_kprime {
        let mut extra = Vec::new();
        let decision = match hermitian_slots(c_alg, d, cfg.slot_bound) {
            None => Decision::Inconclusive,
            Some((b, c)) => {
                extra.push(("hermitian_slots".to_string(), json!([b.rep(), c.rep()])));
                match lambda_witness_search(&t.l, d, b, c, cfg.height) {
                    Some(w) => {
                        extra.push(("lambda".to_string(), lambda_json(&w)));
                        Decision::Yes
                    }
                    None => Decision::Inconclusive,
                }
            }
        };
        checks.push((
            CrossCheck {
                rule: rules::LAMBDA_WITNESS.into(),
                decision,
            },
            extra,
        ));
    }

    for (check, extra) in checks {
        if check.decision != Decision::Inconclusive && check.decision != verdict.decision {
            return Err(Error::CrossCheckDisagreement {
                rule: check.rule,
                expected: verdict.decision.to_string(),
                got: check.decision.to_string(),
            });
        }
        for (k, v) in extra {
            verdict.witnesses.insert(k, v);
        }
        verdict.crosschecks.push(check);
    }
    Ok(verdict)
}

/// Over R, from whether the norm form is definite and the signs of `d` and `δ`.
pub fn decide_over_r(definite: bool, d: i64, delta: i64) -> Result<Verdict> {
    for (name, v) in [("d", d), ("delta", delta)] {
        if v != 1 && v != -1 {
            return Err(Error::PreconditionViolated(format!(
                "real square class {name} must be 1 or -1, got {v}"
            )));
        }
    }
    let verdict = if !definite {
        Verdict::new(Decision::Yes, rules::SPLIT)
    } else {
        Verdict::new(
            Decision::from_bool(d == -1 && delta == 1),
            rules::REAL_ANISOTROPIC,
        )
    };
    Ok(verdict
        .witness("d", json!(d))
        .witness("delta", json!(delta)))
}

/// `C = C(Q, t)` over `K = Q((t))` for a division quaternion algebra `Q`, with
/// `k′ = Q(√d) ⊂ Q` and a cyclic cubic field `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentScenario {
    pub quat: (Rational, Rational),
    pub d: SquareClass,
    pub l: CubicEtale,
}

impl LaurentScenario {
    pub fn new(quat: (Rational, Rational), d: SquareClass, l: CubicEtale) -> Result<Self> {
        let s = LaurentScenario { quat, d, l };
        s.validate()?;
        Ok(s)
    }

    pub fn quaternion(&self) -> Result<CompositionAlgebra> {
        CompositionAlgebra::new(vec![self.quat.0.clone(), self.quat.1.clone()])
    }

    pub fn validate(&self) -> Result<()> {
        let q = self
            .quaternion()
            .map_err(|e| Error::InvalidScenario(format!("quaternion parameters: {e}")))?;
        if q.is_split()? {
            return Err(Error::InvalidScenario(
                "the quaternion algebra is split".into(),
            ));
        }
        if self.d.is_one() {
            return Err(Error::InvalidScenario("k' must be a field".into()));
        }
        let kprime = QuadraticEtale::new(self.d);
        if !q.norm_form().represents_subform(&kprime.norm_form()) {
            return Err(Error::InvalidScenario(format!(
                "Q(sqrt {}) is not a subfield of the quaternion algebra",
                self.d
            )));
        }
        if !self.l.is_field() || !self.l.discriminant().is_one() {
            return Err(Error::InvalidScenario(format!(
                "l = {} is not a Galois cubic field",
                self.l
            )));
        }
        Ok(())
    }
}

/// Verdicts over `K = Q((t))`, `K′ = K ⊗ k′` and `L = K ⊗ l`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaurentVerdicts {
    pub over_k: Verdict,
    pub over_kprime: Verdict,
    pub over_l: Verdict,
}

pub fn decide_laurent(s: &LaurentScenario) -> Result<LaurentVerdicts> {
    s.validate()?;
    let q = s.quaternion()?;
    let nq = q.norm_form();
    let t = TorusType::new(QuadraticEtale::new(s.d), s.l);

    // over K: vanishing H1 plus the anisotropic second residue
    let gamma = galois_image(&t)?;
    let h1_vanishes = verify_h1_vanishing(&gamma)?;
    let laurent = LaurentForm::doubled_by_t(&nq);
    let obstructed = laurent.second_residue_obstructs_descent();
    if !h1_vanishes || !obstructed {
        return Err(Error::CrossCheckDisagreement {
            rule: rules::RESIDUE.into(),
            expected: "applicable".into(),
            got: format!("h1 vanishes: {h1_vanishes}, residue anisotropic: {obstructed}"),
        });
    }
    let over_k = Verdict::new(Decision::No, rules::RESIDUE)
        .witness(
            "galois_image",
            json!(gamma
                .elements()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()),
        )
        .witness("h1", json!([]))
        .witness("first_residue", form_json(&laurent.q1))
        .witness("second_residue", form_json(&laurent.q2));

    // over K′: k′ splits Q, hence C
    let kprime = QuadraticEtale::new(s.d);
    let splits = q.norm_form().represents_subform(&kprime.norm_form());
    let over_kprime = Verdict::new(Decision::from_bool(splits), rules::SPLIT)
        .witness("kprime_in_quaternion", json!(splits));

    // over L: l ⊗ l is split, so the type becomes (k′L, L³), realized since K′ splits C
    let over_l = Verdict::new(Decision::from_bool(splits), rules::SPLIT_CUBIC)
        .witness("kprime_in_quaternion", json!(splits));

    Ok(LaurentVerdicts {
        over_k,
        over_kprime,
        over_l,
    })
}

/// A k-point exists once points over extensions of coprime-enough degrees exist:
/// YES if the gcd of the degrees with a YES answer is odd.
pub fn odd_degree_reduction(points: &[(u64, Decision)]) -> Result<Verdict> {
    if points.is_empty() {
        return Err(Error::PreconditionViolated("no extensions given".into()));
    }
    if points.iter().any(|&(deg, _)| deg == 0) {
        return Err(Error::PreconditionViolated(
            "degrees must be positive".into(),
        ));
    }
    let g = points
        .iter()
        .filter(|(_, dec)| *dec == Decision::Yes)
        .fold(0u64, |acc, &(deg, _)| acc.gcd(&deg));
    let decision = if g % 2 == 1 {
        Decision::Yes
    } else {
        Decision::Inconclusive
    };
    Ok(Verdict::new(decision, rules::ODD_DEGREE).witness("gcd", json!(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: i64, l: CubicEtale) -> TorusType {
        TorusType::new(QuadraticEtale::from_int(d).unwrap(), l)
    }

    fn cyclic() -> CubicEtale {
        CubicEtale::field(-1, -3, 0).unwrap()
    }

    fn pure() -> CubicEtale {
        CubicEtale::field(-2, 0, 0).unwrap()
    }

    #[test]
    fn worked_cases_over_q() {
        let cfg = EngineConfig::default();
        let cayley = CompositionAlgebra::cayley();
        let v = decide_over_q(&cayley, &t(-1, cyclic()), &cfg).unwrap();
        assert_eq!((v.decision, v.rule.as_str()), (Decision::Yes, "R3"));
        assert!(v.witnesses.contains_key("lambda"));
        let v = decide_over_q(&cayley, &t(-1, pure()), &cfg).unwrap();
        assert_eq!((v.decision, v.rule.as_str()), (Decision::No, "R3"));
        let v = decide_over_q(&CompositionAlgebra::split_octonions(), &t(7, pure()), &cfg).unwrap();
        assert_eq!((v.decision, v.rule.as_str()), (Decision::Yes, "R1"));
        let v = decide_over_q(&cayley, &t(-3, pure()), &cfg).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.crosscheck(rules::EQUAL_DISCRIMINANT), Some(Decision::No));
    }

    #[test]
    fn real_place() {
        assert_eq!(decide_over_r(true, -1, 1).unwrap().decision, Decision::Yes);
        assert_eq!(decide_over_r(true, -1, -1).unwrap().decision, Decision::No);
        assert_eq!(decide_over_r(false, 1, -1).unwrap().decision, Decision::Yes);
        assert!(decide_over_r(true, 2, 1).is_err());
    }

    #[test]
    fn laurent_family() {
        let s = LaurentScenario::new(
            (crate::arith::rat(-1), crate::arith::rat(-1)),
            SquareClass::MINUS_ONE,
            cyclic(),
        )
        .unwrap();
        let v = decide_laurent(&s).unwrap();
        assert_eq!(
            (v.over_k.decision, v.over_kprime.decision, v.over_l.decision),
            (Decision::No, Decision::Yes, Decision::Yes)
        );
        let bad = LaurentScenario::new(
            (crate::arith::rat(1), crate::arith::rat(1)),
            SquareClass::MINUS_ONE,
            cyclic(),
        );
        assert!(matches!(bad, Err(Error::InvalidScenario(_))));
    }

    #[test]
    fn odd_degrees() {
        use Decision::*;
        assert_eq!(odd_degree_reduction(&[(3, Yes)]).unwrap().decision, Yes);
        assert_eq!(
            odd_degree_reduction(&[(2, Yes), (4, Yes)])
                .unwrap()
                .decision,
            Inconclusive
        );
        assert_eq!(
            odd_degree_reduction(&[(2, Yes), (3, Yes)])
                .unwrap()
                .decision,
            Yes
        );
        assert_eq!(
            odd_degree_reduction(&[(3, No)]).unwrap().decision,
            Inconclusive
        );
    }
}
