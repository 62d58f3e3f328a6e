//! Integer polynomials in λ and chromatic polynomials of graphs and graph
//! sequences.
//!
//! The sequence polynomial counts colorings that are proper for at least
//! one member graph, so it is the inclusion–exclusion alternating sum of
//! ordinary chromatic polynomials of edge-set unions; that sum is the
//! normative definition here, with the three-term recursion available as
//! an independent cross-check and brute-force coloring counts as oracles.

use crate::error::{Error, Result};
use crate::graphs::{Graph, GraphSequence};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

/// Dense integer polynomial; index k holds the coefficient of λ^k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>, // trimmed: last entry nonzero, empty = zero poly
}

impl IntegerPolynomial {
    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// λ^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntegerPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficients c_0..c_d ascending; the zero polynomial yields [0].
    pub fn coefficients_ascending(&self) -> Vec<BigInt> {
        if self.coeffs.is_empty() {
            vec![BigInt::zero()]
        } else {
            self.coeffs.clone()
        }
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coefficient(k) + other.coefficient(k));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coefficient(k) - other.coefficient(k));
        }
        Self::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// p(−λ): coefficient c_k becomes (−1)^k c_k.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntegerPolynomial { coeffs }
    }

    /// Render with the given variable symbol, descending powers, zero
    /// terms omitted: "λ^3 - 3λ^2 + 2λ".
    pub fn format_with(&self, sym: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.magnitude();
            if k == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push_str(sym);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("λ"))
    }
}

type Memo = HashMap<(usize, Vec<(u8, u8)>), IntegerPolynomial>;

/// Chromatic polynomial by deletion–contraction on the edge count,
/// memoized on the canonical (n, sorted edge list) key.
pub fn chromatic_polynomial(g: &Graph) -> IntegerPolynomial {
    let mut memo = Memo::new();
    chromatic_memoized(g, &mut memo)
}

fn chromatic_memoized(g: &Graph, memo: &mut Memo) -> IntegerPolynomial {
    if g.edge_count() == 0 {
        return IntegerPolynomial::monomial(g.n());
    }
    let key = (g.n(), g.edges().to_vec());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (u, v) = g.edges()[0];
    let deleted = Graph::new(g.n(), &g.edges()[1..]).expect("deletion keeps validity");
    let contracted = contract(g, u, v);
    let result = chromatic_memoized(&deleted, memo).sub(&chromatic_memoized(&contracted, memo));
    memo.insert(key, result.clone());
    result
}

/// Simple-graph contraction of edge (u,v), u < v: v is merged into u,
/// vertices above v shift down, loops and parallel duplicates drop out.
fn contract(g: &Graph, u: u8, v: u8) -> Graph {
    debug_assert!(u < v);
    let mut edges = std::collections::BTreeSet::new();
    for &(a, b) in g.edges() {
        if (a, b) == (u, v) {
            continue;
        }
        let a = if a == v { u } else { a };
        let b = if b == v { u } else { b };
        if a == b {
            continue;
        }
        let shift = |w: u8| if w > v { w - 1 } else { w };
        let (a, b) = (shift(a), shift(b));
        edges.insert((a.min(b), a.max(b)));
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::new(g.n() - 1, &edges).expect("contraction keeps validity")
}

/// Exact count of proper λ-colorings by enumerating all λ^n assignments.
/// Guarded by n·λ^n ≤ max_ops.
pub fn count_proper_colorings(g: &Graph, lambda: u64, max_ops: u64) -> Result<u64> {
    enumerate_colorings(g.n(), lambda, max_ops, |coloring| {
        is_proper(g, coloring)
    })
}

/// Exact count of colorings proper for at least one member of the
/// sequence — the quantity the sequence chromatic polynomial interpolates.
pub fn count_sequence_colorings(seq: &GraphSequence, lambda: u64, max_ops: u64) -> Result<u64> {
    enumerate_colorings(seq.n(), lambda, max_ops, |coloring| {
        seq.graphs().iter().any(|g| is_proper(g, coloring))
    })
}

fn is_proper(g: &Graph, coloring: &[u64]) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| coloring[u as usize - 1] != coloring[v as usize - 1])
}

fn enumerate_colorings(
    n: usize,
    lambda: u64,
    max_ops: u64,
    accept: impl Fn(&[u64]) -> bool,
) -> Result<u64> {
    if lambda == 0 {
        return Ok(0);
    }
    let total = (lambda as u128)
        .checked_pow(n as u32)
        .and_then(|t| t.checked_mul(n as u128))
        .ok_or_else(|| Error::budget("coloring enumeration size overflows"))?;
    if total > max_ops as u128 {
        return Err(Error::budget(format!(
            "enumerating {lambda}^{n} colorings exceeds the {max_ops}-operation guard"
        )));
    }
    let mut coloring = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if accept(&coloring) {
            count += 1;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            coloring[pos] += 1;
            if coloring[pos] < lambda {
                break;
            }
            coloring[pos] = 0;
        }
    }
}

/// Sequence chromatic polynomial via inclusion–exclusion over nonempty
/// subsets of members: Σ (−1)^{|S|+1} χ(∪_{i∈S} G_i).
pub fn sequence_chromatic_polynomial(seq: &GraphSequence) -> IntegerPolynomial {
    let mut memo = Memo::new();
    sequence_chromatic_memoized(seq, &mut memo)
}

fn sequence_chromatic_memoized(seq: &GraphSequence, memo: &mut Memo) -> IntegerPolynomial {
    let m = seq.len();
    let mut total = IntegerPolynomial::zero();
    for mask in 1u32..(1u32 << m) {
        let members: Vec<&Graph> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &seq.graphs()[i])
            .collect();
        let u = Graph::union(&members).expect("sequence members share a vertex count");
        let chi = chromatic_memoized(&u, memo);
        if mask.count_ones() % 2 == 1 {
            total = total.add(&chi);
        } else {
            total = total.sub(&chi);
        }
    }
    total
}

/// The three-term recursion cross-check: with G' the first m−2 members,
/// χ over the full sequence must equal
/// χ(G', G_{m−1}) − χ(G', G_{m−1} ∪ G_m) + χ(G', G_m).
/// The m = 2 instance of this is plain two-set inclusion–exclusion.
pub fn verify_recursion(seq: &GraphSequence) -> Result<bool> {
    let m = seq.len();
    if m < 2 {
        return Err(Error::input("the recursion needs at least two members"));
    }
    let prefix = &seq.graphs()[..m - 2];
    let a = &seq.graphs()[m - 2];
    let b = &seq.graphs()[m - 1];
    let with_last = |last: Graph| -> GraphSequence {
        let mut graphs = prefix.to_vec();
        graphs.push(last);
        GraphSequence::new(graphs).expect("members validated by the input sequence")
    };
    let mut memo = Memo::new();
    let lhs = sequence_chromatic_memoized(seq, &mut memo);
    let term_a = sequence_chromatic_memoized(&with_last(a.clone()), &mut memo);
    let term_ab = sequence_chromatic_memoized(&with_last(Graph::union(&[a, b])?), &mut memo);
    let term_b = sequence_chromatic_memoized(&with_last(b.clone()), &mut memo);
    Ok(lhs == term_a.sub(&term_ab).add(&term_b))
}
