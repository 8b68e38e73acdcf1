//! Lattice vectors, primitivity, cone multiplicities, and validated fan
//! subdivisions of the first quadrant.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Int, Result};

/// A vector `p*e1 + q*e2` in the rank-2 lattice, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub p: Int,
    pub q: Int,
}

impl LatticeVector {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Self {
        LatticeVector { p: p.into(), q: q.into() }
    }

    /// `true` iff `gcd(|p|, |q|) = 1`. The zero vector is a domain error.
    pub fn is_primitive(&self) -> Result<bool> {
        if self.p.is_zero() && self.q.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.p.gcd(&self.q).is_one())
    }

    /// Cross product `p*other.q - other.p*q`; positive iff `other` has the
    /// strictly larger slope (slope of (1,0) is 0, of (0,1) is +inf).
    pub fn cross(&self, other: &LatticeVector) -> Int {
        &self.p * &other.q - &other.p * &self.q
    }

    fn in_first_quadrant(&self) -> bool {
        !self.p.is_negative() && !self.q.is_negative()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A 2-dimensional lattice cone spanned by two independent generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone2D {
    gen1: LatticeVector,
    gen2: LatticeVector,
}

impl Cone2D {
    /// Generators must be linearly independent.
    pub fn new(gen1: LatticeVector, gen2: LatticeVector) -> Result<Self> {
        if gen1.cross(&gen2).is_zero() {
            return Err(Error::DegenerateCone);
        }
        Ok(Cone2D { gen1, gen2 })
    }

    pub fn gen1(&self) -> &LatticeVector {
        &self.gen1
    }

    pub fn gen2(&self) -> &LatticeVector {
        &self.gen2
    }
}

impl fmt::Display for Cone2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone({}, {})", self.gen1, self.gen2)
    }
}

/// Index of the sublattice spanned by the cone's minimal generators:
/// `p1*q2 - p2*q1` for first-quadrant generators in increasing slope order.
/// 1 means the associated chart is smooth.
pub fn cone_multiplicity(c: &Cone2D) -> Result<Int> {
    for g in [&c.gen1, &c.gen2] {
        if !g.in_first_quadrant() {
            return Err(Error::OutsideFirstQuadrant { p: g.p.to_string(), q: g.q.to_string() });
        }
        if !g.is_primitive()? {
            return Err(Error::NonPrimitiveGenerator { p: g.p.to_string(), q: g.q.to_string() });
        }
    }
    let det = c.gen1.cross(&c.gen2);
    if det.is_zero() {
        return Err(Error::DegenerateCone);
    }
    if det.is_negative() {
        return Err(Error::NonPositiveDeterminant);
    }
    Ok(det)
}

/// The `2n`-tuple `(p1,q1,...,pn,qn)` encoding a subdivision of the first
/// quadrant. Sentinels `u0 = (1,0)` and `u_{n+1} = (0,1)` are virtual: they
/// are addressable through [`WeightSequence::vector`] but never stored.
///
/// The empty sequence (`n = 0`) is the trivial subdivision and is allowed;
/// it stands for the germ itself (no blow-up).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSequence {
    pairs: Vec<LatticeVector>,
}

impl WeightSequence {
    /// Validate and build. Each pair needs `p,q >= 1`, primitivity, and the
    /// slopes `q_k/p_k` must strictly increase (compared by integer
    /// cross-multiplication; no divisions).
    pub fn new(pairs: Vec<LatticeVector>) -> Result<Self> {
        for (i, v) in pairs.iter().enumerate() {
            let k = i + 1;
            if v.p < Int::one() || v.q < Int::one() {
                return Err(Error::InvalidWeightSequence {
                    index: k,
                    condition: format!("pair {v} must have p >= 1 and q >= 1"),
                });
            }
            if !v.is_primitive()? {
                return Err(Error::InvalidWeightSequence {
                    index: k,
                    condition: format!("pair {v} is not primitive"),
                });
            }
        }
        for (i, w) in pairs.windows(2).enumerate() {
            let k = i + 2; // index of the later pair
            if w[0].cross(&w[1]) <= Int::zero() {
                return Err(Error::InvalidWeightSequence {
                    index: k,
                    condition: format!(
                        "slope must strictly increase: q{}/p{} >= q{k}/p{k}",
                        k - 1,
                        k - 1
                    ),
                });
            }
        }
        Ok(WeightSequence { pairs })
    }

    pub fn empty() -> Self {
        WeightSequence { pairs: Vec::new() }
    }

    /// Number of stored pairs `n`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[LatticeVector] {
        &self.pairs
    }

    /// The vector `u_k` for `0 <= k <= n+1`, sentinels included.
    pub fn vector(&self, k: usize) -> LatticeVector {
        assert!(k <= self.len() + 1, "ray index {k} out of range");
        if k == 0 {
            LatticeVector::new(1, 0)
        } else if k == self.len() + 1 {
            LatticeVector::new(0, 1)
        } else {
            self.pairs[k - 1].clone()
        }
    }

    /// `p_k` with sentinel values `p_0 = 1`, `p_{n+1} = 0`.
    pub fn p(&self, k: usize) -> Int {
        self.vector(k).p
    }

    /// `q_k` with sentinel values `q_0 = 0`, `q_{n+1} = 1`.
    pub fn q(&self, k: usize) -> Int {
        self.vector(k).q
    }

    /// Replace the last pair's `q` without revalidating slopes upward (the
    /// caller guarantees `m >= q_n`, which can only increase the last slope).
    pub(crate) fn with_last_q(&self, m: Int) -> Result<Self> {
        let mut pairs = self.pairs.clone();
        let last = pairs
            .last_mut()
            .ok_or_else(|| Error::precondition("cannot retarget the tail of an empty sequence"))?;
        last.q = m;
        WeightSequence::new(pairs)
    }

    pub(crate) fn appending(&self, v: LatticeVector) -> Result<Self> {
        let mut pairs = self.pairs.clone();
        pairs.push(v);
        WeightSequence::new(pairs)
    }

    /// Drop the last pair.
    pub(crate) fn dropping_last(&self) -> Result<Self> {
        if self.pairs.is_empty() {
            return Err(Error::domain("cannot truncate an empty sequence"));
        }
        let mut pairs = self.pairs.clone();
        pairs.pop();
        WeightSequence::new(pairs)
    }
}

/// Ordered maximal cones `sigma_k = Cone(u_{k-1}, u_k)`, `1 <= k <= n+1`,
/// covering the first quadrant; adjacent cones share exactly one ray.
pub fn build_fan(ws: &WeightSequence) -> Vec<Cone2D> {
    (1..=ws.len() + 1)
        .map(|k| {
            Cone2D::new(ws.vector(k - 1), ws.vector(k))
                .expect("validated weight sequence yields non-degenerate cones")
        })
        .collect()
}

impl fmt::Display for WeightSequence {
    /// Text form `p1:q1,p2:q2,...,pn:qn`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.pairs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", v.p, v.q)?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for WeightSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mk_err = |reason: String| Error::ParseWeights { input: s.to_string(), reason };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return WeightSequence::new(Vec::new());
        }
        let mut pairs = Vec::new();
        for part in trimmed.split(',') {
            let (p, q) = part
                .split_once(':')
                .ok_or_else(|| mk_err(format!("expected p:q, got {part:?}")))?;
            let p: Int = p.trim().parse().map_err(|_| mk_err(format!("bad integer {p:?}")))?;
            let q: Int = q.trim().parse().map_err(|_| mk_err(format!("bad integer {q:?}")))?;
            pairs.push(LatticeVector { p, q });
        }
        WeightSequence::new(pairs)
    }
}

impl Serialize for WeightSequence {
    /// JSON form: array of `[p, q]` integer pairs.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair<'a>(
            #[serde(with = "crate::rational::int_number")] &'a Int,
            #[serde(with = "crate::rational::int_number")] &'a Int,
        );
        s.collect_seq(self.pairs.iter().map(|v| Pair(&v.p, &v.q)))
    }
}

impl<'de> Deserialize<'de> for WeightSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Pair(
            #[serde(with = "crate::rational::int_number")] Int,
            #[serde(with = "crate::rational::int_number")] Int,
        );
        let pairs = Vec::<Pair>::deserialize(d)?;
        WeightSequence::new(pairs.into_iter().map(|Pair(p, q)| LatticeVector { p, q }).collect())
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(pairs: &[(i64, i64)]) -> WeightSequence {
        WeightSequence::new(pairs.iter().map(|&(p, q)| LatticeVector::new(p, q)).collect())
            .unwrap()
    }

    #[test]
    fn primitivity() {
        assert!(LatticeVector::new(1, 0).is_primitive().unwrap());
        assert!(!LatticeVector::new(2, 4).is_primitive().unwrap());
        // gcd(3,7) = 1 by the Euclidean algorithm: 7 = 2*3 + 1, 3 = 3*1
        assert!(LatticeVector::new(3, 7).is_primitive().unwrap());
        assert!(matches!(LatticeVector::new(0, 0).is_primitive(), Err(Error::ZeroVector)));
    }

    #[test]
    fn multiplicity_of_basic_cones() {
        let smooth = Cone2D::new(LatticeVector::new(1, 0), LatticeVector::new(0, 1)).unwrap();
        assert_eq!(cone_multiplicity(&smooth).unwrap(), 1.into());
        // det = 2*2 - 1*1
        let c = Cone2D::new(LatticeVector::new(2, 1), LatticeVector::new(1, 2)).unwrap();
        assert_eq!(cone_multiplicity(&c).unwrap(), 3.into());
        // Cone((1,0),(p,q)) has multiplicity q
        let c = Cone2D::new(LatticeVector::new(1, 0), LatticeVector::new(5, 3)).unwrap();
        assert_eq!(cone_multiplicity(&c).unwrap(), 3.into());
    }

    #[test]
    fn multiplicity_domain_errors() {
        assert!(matches!(
            Cone2D::new(LatticeVector::new(1, 1), LatticeVector::new(2, 2)),
            Err(Error::DegenerateCone)
        ));
        let c = Cone2D::new(LatticeVector::new(2, 4), LatticeVector::new(0, 1)).unwrap();
        assert!(matches!(cone_multiplicity(&c), Err(Error::NonPrimitiveGenerator { .. })));
        let c = Cone2D::new(LatticeVector::new(1, 2), LatticeVector::new(2, 1)).unwrap();
        assert!(matches!(cone_multiplicity(&c), Err(Error::NonPositiveDeterminant)));
        let c = Cone2D::new(LatticeVector::new(-1, 2), LatticeVector::new(0, 1)).unwrap();
        assert!(matches!(cone_multiplicity(&c), Err(Error::OutsideFirstQuadrant { .. })));
    }

    #[test]
    fn fan_of_single_pair_is_two_cones() {
        let f = build_fan(&ws(&[(5, 3)]));
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].gen1(), &LatticeVector::new(1, 0));
        assert_eq!(f[0].gen2(), &LatticeVector::new(5, 3));
        assert_eq!(f[1].gen1(), &LatticeVector::new(5, 3));
        assert_eq!(f[1].gen2(), &LatticeVector::new(0, 1));
    }

    #[test]
    fn fan_multiplicities_by_hand() {
        // determinants: q1 = 1, 3*3 - 2*1 = 7, p2 = 2
        let f = build_fan(&ws(&[(3, 1), (2, 3)]));
        let mults: Vec<Int> = f.iter().map(|c| cone_multiplicity(c).unwrap()).collect();
        assert_eq!(mults, vec![1.into(), 7.into(), 2.into()]);
    }

    #[test]
    fn adjacent_cones_share_one_ray() {
        let s = ws(&[(3, 1), (2, 3)]);
        let f = build_fan(&s);
        for w in f.windows(2) {
            assert_eq!(w[0].gen2(), w[1].gen1());
        }
        assert_eq!(f.len(), s.len() + 1);
    }

    #[test]
    fn slope_violations_are_named() {
        // 1/2 < 1/1 is fine; the reversed order fails at pair 2
        assert!(ws(&[(2, 1)]).len() == 1);
        let err = WeightSequence::new(vec![LatticeVector::new(1, 1), LatticeVector::new(2, 1)])
            .unwrap_err();
        match err {
            Error::InvalidWeightSequence { index, condition } => {
                assert_eq!(index, 2);
                assert!(condition.contains("slope"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        // equal slopes are rejected too (same primitive vector repeated)
        assert!(WeightSequence::new(vec![
            LatticeVector::new(2, 1),
            LatticeVector::new(2, 1)
        ])
        .is_err());
    }

    #[test]
    fn nonpositive_or_imprimitive_pairs_are_rejected() {
        assert!(matches!(
            WeightSequence::new(vec![LatticeVector::new(2, 0)]),
            Err(Error::InvalidWeightSequence { index: 1, .. })
        ));
        assert!(matches!(
            WeightSequence::new(vec![LatticeVector::new(2, 4)]),
            Err(Error::InvalidWeightSequence { index: 1, .. })
        ));
    }

    #[test]
    fn sentinels_are_virtual() {
        let s = ws(&[(3, 1), (2, 3)]);
        assert_eq!(s.vector(0), LatticeVector::new(1, 0));
        assert_eq!(s.vector(3), LatticeVector::new(0, 1));
        assert_eq!(s.p(1), 3.into());
        assert_eq!(s.q(2), 3.into());
        assert_eq!(s.p(3), 0.into());
        assert_eq!(s.q(0), 0.into());
    }

    #[test]
    fn text_form_roundtrip() {
        let s = ws(&[(3, 1), (2, 3)]);
        assert_eq!(s.to_string(), "3:1,2:3");
        assert_eq!("3:1,2:3".parse::<WeightSequence>().unwrap(), s);
        assert_eq!(" 3 : 1 , 2 : 3 ".parse::<WeightSequence>().unwrap(), s);
        assert!("3:1,foo".parse::<WeightSequence>().is_err());
        assert!("1:1,2:1".parse::<WeightSequence>().is_err());
    }

    #[test]
    fn json_form_roundtrip() {
        let s = ws(&[(3, 1), (2, 3)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[[3,1],[2,3]]");
        let back: WeightSequence = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<WeightSequence>("[[1,1],[2,1]]").is_err());
    }

    #[test]
    fn truncation_and_extension_preserve_validity() {
        let s = ws(&[(3, 1), (2, 3)]);
        let shorter = s.dropping_last().unwrap();
        assert_eq!(shorter, ws(&[(3, 1)]));
        let longer = shorter.appending(LatticeVector::new(2, 3)).unwrap();
        assert_eq!(longer, s);
        assert!(WeightSequence::empty().dropping_last().is_err());
    }
}
