//! Surface-germ inputs and the derived log discrepancy `a0`.
//!
//! A germ contributes four numbers to every formula downstream: the
//! self-intersection `B1^2` of the contractable boundary component, the
//! positivity constant `l`, the ambient volume, and the pairing
//! `(K_X+B).B2`. Geometric hypotheses behind them (bigness of the
//! perturbed pair, log canonicity) are trusted, not rechecked.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::rational_string;
use crate::{Error, Int, Rational, Result};

/// Validated germ parameters `(B1^2, l, vol_X, (K_X+B).B2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermParams {
    #[serde(with = "rational_string")]
    b1_sq: Rational,
    l: u64,
    #[serde(with = "rational_string")]
    vol_x: Rational,
    #[serde(with = "rational_string")]
    kb_dot_b2: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Raw, unvalidated fields as they appear in a germ file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGerm {
    #[serde(with = "rational_string")]
    b1_sq: Rational,
    l: u64,
    #[serde(with = "rational_string")]
    vol_x: Rational,
    #[serde(with = "rational_string")]
    kb_dot_b2: Rational,
    #[serde(default)]
    label: Option<String>,
}

impl GermParams {
    /// Validate raw fields; every violated invariant is reported with the
    /// field and the inequality that failed.
    pub fn new(
        b1_sq: Rational,
        l: u64,
        vol_x: Rational,
        kb_dot_b2: Rational,
        label: Option<String>,
    ) -> Result<Self> {
        let mut violations = Vec::new();
        if !b1_sq.is_negative() {
            violations.push(format!("b1_sq = {b1_sq} violates b1_sq < 0"));
        }
        if l < 1 {
            violations.push(format!("l = {l} violates l >= 1"));
        }
        if !vol_x.is_positive() {
            violations.push(format!("vol_x = {vol_x} violates vol_x > 0"));
        }
        if l >= 1 {
            let one_over_l = Rational::new(Int::one(), l.into());
            if kb_dot_b2 < one_over_l {
                violations
                    .push(format!("kb_dot_b2 = {kb_dot_b2} violates kb_dot_b2 >= 1/l = 1/{l}"));
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvalidGerm { violations });
        }
        Ok(GermParams { b1_sq, l, vol_x, kb_dot_b2, label })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGerm = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGerm { violations: vec![format!("unparseable germ file: {e}")] })?;
        GermParams::new(raw.b1_sq, raw.l, raw.vol_x, raw.kb_dot_b2, raw.label)
    }

    pub fn b1_sq(&self) -> &Rational {
        &self.b1_sq
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn vol_x(&self) -> &Rational {
        &self.vol_x
    }

    pub fn kb_dot_b2(&self) -> &Rational {
        &self.kb_dot_b2
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `a0 = 1/(p1 - q1*B1^2)`, the log discrepancy of the contracted curve.
    /// Always satisfies `0 < a0 < 1/p1` since `B1^2 < 0`.
    pub fn a0(&self, p1: &Int, q1: &Int) -> Rational {
        assert!(p1 >= &Int::one() && q1 >= &Int::one(), "a0 needs p1, q1 >= 1");
        assert!(p1.gcd(q1).is_one(), "a0 needs a primitive pair");
        let denom = Rational::from_integer(p1.clone()) - Rational::from_integer(q1.clone()) * &self.b1_sq;
        let a0 = denom.recip();
        debug_assert!(a0.is_positive());
        debug_assert!(a0 < Rational::new(Int::one(), p1.clone()));
        a0
    }
}

/// Log discrepancy `(p+q)/l` of the exceptional divisor over the primitive
/// vector `p*e1 + q*e2` with respect to the `1/l`-perturbed pair.
pub fn log_discrepancy(p: &Int, q: &Int, l: u64) -> Result<Rational> {
    if p.is_negative() || q.is_negative() || (p.is_zero() && q.is_zero()) {
        return Err(Error::domain(format!(
            "log discrepancy needs p, q >= 0 and (p,q) != (0,0), got ({p}, {q})"
        )));
    }
    if l < 1 {
        return Err(Error::domain("log discrepancy needs l >= 1"));
    }
    Ok(Rational::new(p + q, l.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// The reference germ: P^2 with four general lines, blown up once at a
    /// node of the boundary. E^2 = -1, (K+B).Ltilde = 1, vol = H^2 = 1, and
    /// l = 2 since K+B - (E+Ltilde)/2 pulls back from half the ample line
    /// class while (K+B).B2 = 1 >= 1/2.
    fn reference() -> GermParams {
        GermParams::new(rat(-1, 1), 2, rat(1, 1), rat(1, 1), None).unwrap()
    }

    #[test]
    fn reference_germ_is_valid() {
        reference();
    }

    #[test]
    fn violations_are_itemized() {
        let err = GermParams::new(rat(0, 1), 2, rat(1, 1), rat(1, 1), None).unwrap_err();
        match err {
            Error::InvalidGerm { violations } => {
                assert_eq!(violations.len(), 1);
                assert!(violations[0].contains("b1_sq"));
            }
            other => panic!("unexpected {other:?}"),
        }
        // 1/4 < 1/2
        let err = GermParams::new(rat(-1, 1), 2, rat(1, 1), rat(1, 4), None).unwrap_err();
        match err {
            Error::InvalidGerm { violations } => {
                assert!(violations[0].contains("kb_dot_b2"));
            }
            other => panic!("unexpected {other:?}"),
        }
        // several at once
        let err = GermParams::new(rat(1, 1), 3, rat(0, 1), rat(0, 1), None).unwrap_err();
        match err {
            Error::InvalidGerm { violations } => assert_eq!(violations.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn a0_closed_form() {
        let g = reference();
        assert_eq!(g.a0(&1.into(), &1.into()), rat(1, 2));
        assert_eq!(g.a0(&3.into(), &1.into()), rat(1, 4));
        assert_eq!(g.a0(&2.into(), &1.into()), rat(1, 3));
    }

    #[test]
    fn a0_shrinks_as_b1_sq_drops() {
        let p1: Int = 3.into();
        let q1: Int = 2.into();
        let mut last = rat(1, 1);
        for k in 1..20i64 {
            let g = GermParams::new(rat(-k, 1), 1, rat(1, 1), rat(1, 1), None).unwrap();
            let a0 = g.a0(&p1, &q1);
            assert!(a0 < last);
            assert!(a0 < Rational::new(Int::one(), p1.clone()));
            last = a0;
        }
    }

    #[test]
    fn log_discrepancy_values() {
        assert_eq!(log_discrepancy(&1.into(), &0.into(), 5).unwrap(), rat(1, 5));
        assert_eq!(log_discrepancy(&2.into(), &3.into(), 5).unwrap(), rat(1, 1));
        // p >= l forces value > 1
        let v = log_discrepancy(&7.into(), &1.into(), 7).unwrap();
        assert!(v > rat(1, 1));
        assert!(log_discrepancy(&0.into(), &0.into(), 5).is_err());
        assert!(log_discrepancy(&1.into(), &1.into(), 0).is_err());
    }

    #[test]
    fn germ_file_roundtrip() {
        let text = r#"{"b1_sq": "-1", "l": 2, "vol_x": "1", "kb_dot_b2": "1", "label": "P2 + 4 lines, blown up"}"#;
        let g = GermParams::from_json(text).unwrap();
        assert_eq!(g, GermParams::new(rat(-1, 1), 2, rat(1, 1), rat(1, 1), Some("P2 + 4 lines, blown up".into())).unwrap());
        let emitted = serde_json::to_string(&g).unwrap();
        let back = GermParams::from_json(&emitted).unwrap();
        assert_eq!(back, g);
        // fractional fields parse too
        let g2 = GermParams::from_json(r#"{"b1_sq": "-7/3", "l": 1, "vol_x": "5/2", "kb_dot_b2": "9/4"}"#).unwrap();
        assert_eq!(g2.b1_sq(), &rat(-7, 3));
        assert!(GermParams::from_json(r#"{"b1_sq": "0", "l": 2, "vol_x": "1", "kb_dot_b2": "1"}"#).is_err());
    }
}
