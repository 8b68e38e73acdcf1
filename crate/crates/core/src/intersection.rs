//! Exact intersection numbers of the torus-invariant curves `C_0 ... C_{n+1}`
//! on the subdivided surface, plus independent oracle checks.
//!
//! Adjacent curves meet with intersection `1/mult` of the shared cone; curves
//! whose rays share no cone are disjoint. Self-intersections come from the
//! linear relation `(C_k.C_{k-1}) u_{k-1} + (C_k.C_{k+1}) u_{k+1} + (C_k^2) u_k = 0`,
//! which doubles as a machine-checkable oracle for the whole table.

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, GermParams, Int, Rational, Result, WeightSequence};

/// One pairing `C_i.C_j`. `C_0^2` (without germ data) and `C_{n+1}^2` are
/// genuinely undefined since those curves are not proper; undefinedness is a
/// tagged state, never a sentinel number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixEntry {
    Defined(Rational),
    Undefined,
}

impl MatrixEntry {
    pub fn defined(&self) -> Option<&Rational> {
        match self {
            MatrixEntry::Defined(r) => Some(r),
            MatrixEntry::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, MatrixEntry::Defined(_))
    }
}

impl fmt::Display for MatrixEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixEntry::Defined(r) => write!(f, "{r}"),
            MatrixEntry::Undefined => write!(f, "undefined"),
        }
    }
}

impl Serialize for MatrixEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MatrixEntry::Undefined => s.serialize_str("undefined"),
            MatrixEntry::Defined(r) => {
                #[derive(Serialize)]
                struct Frac {
                    num: String,
                    den: String,
                }
                Frac { num: r.numer().to_string(), den: r.denom().to_string() }.serialize(s)
            }
        }
    }
}

/// Symmetric `(n+2) x (n+2)` table of pairings, indexed by curve indices
/// `0 ..= n+1`. Stored dense; `n` stays small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    n: usize,
    entries: Vec<MatrixEntry>,
}

impl IntersectionMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Table dimension `n+2`.
    pub fn size(&self) -> usize {
        self.n + 2
    }

    pub fn entry(&self, i: usize, j: usize) -> &MatrixEntry {
        assert!(i < self.size() && j < self.size(), "entry ({i},{j}) out of range");
        &self.entries[i * self.size() + j]
    }

    /// Overwrite one pairing (and its mirror). Diagnostic use only: lets
    /// tests confirm that the oracle rejects perturbed tables.
    pub fn set_entry(&mut self, i: usize, j: usize, value: MatrixEntry) {
        assert!(i < self.size() && j < self.size(), "entry ({i},{j}) out of range");
        let size = self.size();
        self.entries[i * size + j] = value.clone();
        self.entries[j * size + i] = value;
    }
}

impl Serialize for IntersectionMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            entries: Rows<'a>,
        }
        struct Rows<'a>(&'a IntersectionMatrix);
        struct Row<'a>(&'a IntersectionMatrix, usize);
        impl Serialize for Rows<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.size()))?;
                for i in 0..self.0.size() {
                    seq.serialize_element(&Row(self.0, i))?;
                }
                seq.end()
            }
        }
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.size()))?;
                for j in 0..self.0.size() {
                    seq.serialize_element(self.0.entry(self.1, j))?;
                }
                seq.end()
            }
        }
        Repr { n: self.n, entries: Rows(self) }.serialize(s)
    }
}

fn check_range(k: usize, min: usize, max: usize) -> Result<()> {
    if k < min || k > max {
        return Err(Error::IndexOutOfRange { k, min, max });
    }
    Ok(())
}

/// `C_{k-1}.C_k = 1/(p_{k-1} q_k - p_k q_{k-1})` for `1 <= k <= n+1`;
/// in particular `C_0.C_1 = 1/q_1` and `C_n.C_{n+1} = 1/p_n`.
pub fn adjacent_intersection(ws: &WeightSequence, k: usize) -> Result<Rational> {
    check_range(k, 1, ws.len() + 1)?;
    let det = ws.vector(k - 1).cross(&ws.vector(k));
    Ok(Rational::new(Int::one(), det))
}

/// `C_k^2` for `1 <= k <= n`, evaluated with the sentinel vectors:
/// `-(u_{k-1} x u_{k+1}) / ((u_{k-1} x u_k)(u_k x u_{k+1}))`.
pub fn self_intersection(ws: &WeightSequence, k: usize) -> Result<Rational> {
    let n = ws.len();
    if n == 0 {
        return Err(Error::IndexOutOfRange { k, min: 1, max: 0 });
    }
    check_range(k, 1, n)?;
    let prev = ws.vector(k - 1);
    let cur = ws.vector(k);
    let next = ws.vector(k + 1);
    let outer = prev.cross(&next);
    let left = prev.cross(&cur);
    let right = cur.cross(&next);
    Ok(Rational::new(-outer, left * right))
}

/// Assemble the full pairing table. `(0,0)` is `B1^2 - p1/q1` when germ data
/// is supplied (`B1^2` itself for the trivial subdivision) and undefined
/// otherwise; `(n+1, n+1)` is always undefined.
pub fn intersection_matrix(ws: &WeightSequence, germ: Option<&GermParams>) -> IntersectionMatrix {
    let n = ws.len();
    let size = n + 2;
    let mut entries = vec![MatrixEntry::Defined(Rational::zero()); size * size];
    let mut set = |i: usize, j: usize, v: MatrixEntry| {
        entries[i * size + j] = v.clone();
        entries[j * size + i] = v;
    };
    for k in 1..=n + 1 {
        let v = adjacent_intersection(ws, k).expect("k in range");
        set(k - 1, k, MatrixEntry::Defined(v));
    }
    for k in 1..=n {
        let v = self_intersection(ws, k).expect("k in range");
        set(k, k, MatrixEntry::Defined(v));
    }
    let corner = match germ {
        Some(g) if n >= 1 => {
            MatrixEntry::Defined(g.b1_sq() - Rational::new(ws.p(1), ws.q(1)))
        }
        Some(g) => MatrixEntry::Defined(g.b1_sq().clone()),
        None => MatrixEntry::Undefined,
    };
    set(0, 0, corner);
    set(n + 1, n + 1, MatrixEntry::Undefined);
    IntersectionMatrix { n, entries }
}

/// Oracle: the lattice-vector identity
/// `(C_k.C_{k-1}) u_{k-1} + (C_k.C_{k+1}) u_{k+1} + (C_k^2) u_k = 0`
/// must hold exactly in both coordinates for every `1 <= k <= n`.
pub fn verify_linear_relations(m: &IntersectionMatrix, ws: &WeightSequence) -> bool {
    if m.n() != ws.len() {
        return false;
    }
    for k in 1..=ws.len() {
        let coeffs = [m.entry(k, k - 1), m.entry(k, k), m.entry(k, k + 1)];
        let vectors = [ws.vector(k - 1), ws.vector(k), ws.vector(k + 1)];
        let mut x = Rational::zero();
        let mut y = Rational::zero();
        for (c, u) in coeffs.iter().zip(vectors.iter()) {
            match c.defined() {
                Some(r) => {
                    x += r * Rational::from_integer(u.p.clone());
                    y += r * Rational::from_integer(u.q.clone());
                }
                None => return false,
            }
        }
        if !x.is_zero() || !y.is_zero() {
            return false;
        }
    }
    true
}

/// Coefficients `(1, p_1, ..., p_n, 0)` of the pullback of `B1` on
/// `(C_0, C_1, ..., C_n, C_{n+1})`.
pub fn pullback_b1(ws: &WeightSequence) -> Vec<Int> {
    let mut coeffs = Vec::with_capacity(ws.len() + 2);
    coeffs.push(Int::one());
    for v in ws.pairs() {
        coeffs.push(v.p.clone());
    }
    coeffs.push(Int::zero());
    coeffs
}

/// Dot a coefficient vector with row `k` of the table, skipping terms with
/// zero coefficient so undefined corners never poison a defined sum.
pub fn row_dot(m: &IntersectionMatrix, coeffs: &[Int], k: usize) -> Result<Rational> {
    assert_eq!(coeffs.len(), m.size(), "coefficient vector length mismatch");
    let mut acc = Rational::zero();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match m.entry(j, k).defined() {
            Some(r) => acc += r * Rational::from_integer(c.clone()),
            None => {
                return Err(Error::domain(format!(
                    "row dot product hits undefined entry ({j},{k})"
                )))
            }
        }
    }
    Ok(acc)
}
