//! Hodge decomposition of the chain groups of a coloring complex: the
//! piece dimensions carved out by the Eulerian idempotents, the restricted
//! subcomplexes, per-piece homology, and the per-piece Euler
//! characteristics X^(j).
//!
//! Cross-checks are not optional here: every projection's trace must equal
//! its rank, piece dimensions must sum to the full chain dimension, the
//! restricted boundary must land exactly in the target piece (that is the
//! boundary/idempotent commutation), restricted boundaries must compose to
//! zero, per-piece Betti numbers must sum to the full Betti numbers, and
//! the chain-level and homology-level X^(j) must agree, with X^(n) = 0.
//! Any failure surfaces as an invariant-violation error.

use crate::complex::ChainComplexData;
use crate::error::{Error, Result};
use crate::eulerian::{action_matrix, eulerian_idempotents};
use crate::exactla::{trace_as_dimension, RationalMatrix};

/// Per-(degree, piece) dimension tables plus Euler characteristics.
/// Row index idx holds degree idx−1; column index j−1 holds piece j for
/// j = 1..n. Pieces with j > idx+1 are structurally zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    pub n: usize,
    pub m: usize,
    pub chain_dims: Vec<Vec<usize>>,
    /// Present unless the homology route was explicitly skipped.
    pub homology_dims: Option<Vec<Vec<usize>>>,
    /// euler[j−1] = X^(j) = Σ_i (−1)^i dim C_i^(j).
    pub euler: Vec<i64>,
}

impl HodgeTable {
    pub fn euler_of(&self, j: usize) -> i64 {
        self.euler[j - 1]
    }
}

/// One Hodge piece as a complex in its own coordinates: per-degree image
/// bases of the projection and the boundary restricted to them.
pub struct HodgeSubcomplex {
    pub j: usize,
    /// dims[idx] = dim C^{(j)} at degree idx−1.
    pub dims: Vec<usize>,
    /// bases[idx]: full-complex coordinates of the piece basis (columns).
    pub bases: Vec<RationalMatrix>,
    /// boundaries[idx]: restricted map from piece degree idx−1 to idx−2;
    /// boundaries[0] is the zero map out of the lowest degree.
    pub boundaries: Vec<RationalMatrix>,
}

impl HodgeSubcomplex {
    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(|b| b.rank()).collect();
        (0..self.dims.len())
            .map(|idx| {
                let above = ranks.get(idx + 1).copied().unwrap_or(0);
                self.dims[idx] - ranks[idx] - above
            })
            .collect()
    }
}

/// Projection matrix of e_{idx+1}^(j) on the basis at a degree slot, or
/// None when the piece is structurally zero (j > idx+1).
fn projection(cc: &ChainComplexData, idx: usize, j: usize) -> Result<Option<RationalMatrix>> {
    let k = idx + 1;
    if j > k {
        return Ok(None);
    }
    let es = eulerian_idempotents(k, k)?;
    Ok(Some(action_matrix(&es[j - 1], cc.basis(idx))?))
}

/// Image bases of one piece across all degrees, with the rank/trace
/// cross-check. Returns (dims, bases).
fn piece_bases(cc: &ChainComplexData, j: usize) -> Result<(Vec<usize>, Vec<RationalMatrix>)> {
    let slots = cc.degree_slots();
    let mut dims = Vec::with_capacity(slots);
    let mut bases = Vec::with_capacity(slots);
    for idx in 0..slots {
        let nrows = cc.basis(idx).len();
        match projection(cc, idx, j)? {
            None => {
                dims.push(0);
                bases.push(RationalMatrix::zeros(nrows, 0));
            }
            Some(p) => {
                let expected = trace_as_dimension(&p.trace()?)?;
                let (rank, image) = p.rank_and_image();
                if rank != expected {
                    return Err(Error::invariant(format!(
                        "projection at degree {} piece {j}: trace {expected} but rank {rank}",
                        cc.degree_of(idx)
                    )));
                }
                dims.push(rank);
                bases.push(image);
            }
        }
    }
    Ok((dims, bases))
}

/// Restricted boundaries for a piece, solved exactly in the image-basis
/// coordinates. A solve failure would falsify the commutation of the
/// boundary with the idempotent action and is reported as an invariant
/// violation, as is a nonzero restricted composition.
fn restricted_boundaries(
    cc: &ChainComplexData,
    j: usize,
    dims: &[usize],
    bases: &[RationalMatrix],
) -> Result<Vec<RationalMatrix>> {
    let slots = cc.degree_slots();
    let mut out = Vec::with_capacity(slots);
    out.push(RationalMatrix::zeros(0, dims[0]));
    for idx in 1..slots {
        let w = cc.boundary(idx).mul_dense(&bases[idx])?;
        let r = bases[idx - 1].solve_right(&w).map_err(|e| match e {
            Error::Invariant(msg) => Error::invariant(format!(
                "restricted boundary at degree {} piece {j} leaves its piece: {msg}",
                cc.degree_of(idx)
            )),
            other => other,
        })?;
        out.push(r);
    }
    for idx in 2..slots {
        let prod = out[idx - 1].multiply(&out[idx])?;
        if !prod.is_zero() {
            return Err(Error::invariant(format!(
                "restricted boundary composition at index {idx} piece {j} is nonzero"
            )));
        }
    }
    Ok(out)
}

/// The j-th Hodge piece as a standalone complex.
pub fn hodge_subcomplex(cc: &ChainComplexData, j: usize) -> Result<HodgeSubcomplex> {
    if j < 1 || j > cc.n() {
        return Err(Error::input(format!(
            "piece index {j} out of range 1..={}",
            cc.n()
        )));
    }
    let (dims, bases) = piece_bases(cc, j)?;
    let boundaries = restricted_boundaries(cc, j, &dims, &bases)?;
    Ok(HodgeSubcomplex {
        j,
        dims,
        bases,
        boundaries,
    })
}

/// Per-degree, per-piece chain dimensions (the rank-and-trace route).
pub fn hodge_chain_dimensions(cc: &ChainComplexData) -> Result<Vec<Vec<usize>>> {
    Ok(hodge_table(cc, false)?.chain_dims)
}

/// Per-degree, per-piece homology dimensions.
pub fn hodge_homology_dimensions(cc: &ChainComplexData) -> Result<Vec<Vec<usize>>> {
    Ok(hodge_table(cc, true)?
        .homology_dims
        .expect("homology route requested"))
}

/// Euler characteristics X^(1..n), computed from chain dimensions and
/// cross-checked against the homology route.
pub fn euler_characteristics(cc: &ChainComplexData) -> Result<Vec<i64>> {
    Ok(hodge_table(cc, true)?.euler)
}

pub(crate) fn alternating_sum(column: impl Iterator<Item = usize>) -> i64 {
    column
        .enumerate()
        .map(|(idx, d)| {
            // Index idx holds degree idx−1, so the sign is (−1)^(idx−1).
            if idx % 2 == 0 {
                -(d as i64)
            } else {
                d as i64
            }
        })
        .sum()
}

/// Full Hodge table. With `include_homology` the per-piece homology is
/// computed as well and every homology-side cross-check runs; without it
/// only the chain route is taken (X^(j) from chain dimensions).
pub fn hodge_table(cc: &ChainComplexData, include_homology: bool) -> Result<HodgeTable> {
    let n = cc.n();
    let slots = cc.degree_slots();
    let mut chain_dims = vec![vec![0usize; n]; slots];
    let mut homology_dims = if include_homology {
        Some(vec![vec![0usize; n]; slots])
    } else {
        None
    };
    let full_betti = if include_homology {
        Some(cc.betti_numbers())
    } else {
        None
    };

    let mut euler = vec![0i64; n];
    for j in 1..=n {
        let (dims, bases) = piece_bases(cc, j)?;
        for idx in 0..slots {
            chain_dims[idx][j - 1] = dims[idx];
        }
        euler[j - 1] = alternating_sum(dims.iter().copied());

        if let Some(hom) = homology_dims.as_mut() {
            let boundaries = restricted_boundaries(cc, j, &dims, &bases)?;
            let ranks: Vec<usize> = boundaries.iter().map(|b| b.rank()).collect();
            for idx in 0..slots {
                let above = ranks.get(idx + 1).copied().unwrap_or(0);
                hom[idx][j - 1] = dims[idx] - ranks[idx] - above;
            }
            let via_homology = alternating_sum((0..slots).map(|idx| hom[idx][j - 1]));
            if via_homology != euler[j - 1] {
                return Err(Error::invariant(format!(
                    "X^({j}) disagrees between routes: chains {} vs homology {via_homology}",
                    euler[j - 1]
                )));
            }
        }
    }

    for idx in 0..slots {
        let total: usize = chain_dims[idx].iter().sum();
        if total != cc.basis(idx).len() {
            return Err(Error::invariant(format!(
                "piece dimensions at degree {} sum to {total}, not {}",
                cc.degree_of(idx),
                cc.basis(idx).len()
            )));
        }
    }
    if let (Some(hom), Some(betti)) = (homology_dims.as_ref(), full_betti.as_ref()) {
        for idx in 0..slots {
            let total: usize = hom[idx].iter().sum();
            if total != betti[idx] {
                return Err(Error::invariant(format!(
                    "piece homology at degree {} sums to {total}, not {}",
                    cc.degree_of(idx),
                    betti[idx]
                )));
            }
        }
    }
    if euler[n - 1] != 0 {
        return Err(Error::invariant(format!(
            "X^({n}) = {} but the top piece must vanish",
            euler[n - 1]
        )));
    }
    let total: i64 = euler.iter().sum();
    let reduced = alternating_sum(cc.dims().into_iter());
    if total != reduced {
        return Err(Error::invariant(format!(
            "Σ_j X^(j) = {total} but the reduced Euler characteristic is {reduced}"
        )));
    }

    Ok(HodgeTable {
        n,
        m: cc.sequence_len(),
        chain_dims,
        homology_dims,
        euler,
    })
}

/// The commutation relation ∂ ∘ P^(j) = P^(j) ∘ ∂ at every degree and
/// every piece, as exact matrices. Pieces that are structurally zero on
/// the target side must be annihilated by the boundary.
pub fn check_commutation(cc: &ChainComplexData) -> Result<()> {
    for idx in 1..cc.degree_slots() {
        for j in 1..=idx + 1 {
            let Some(p_src) = projection(cc, idx, j)? else {
                continue;
            };
            let lhs = cc.boundary(idx).mul_dense(&p_src)?;
            match projection(cc, idx - 1, j)? {
                Some(p_tgt) => {
                    let rhs = cc.boundary(idx).rmul_dense(&p_tgt)?;
                    if lhs != rhs {
                        return Err(Error::invariant(format!(
                            "∂P ≠ P∂ at degree {} piece {j}",
                            cc.degree_of(idx)
                        )));
                    }
                }
                None => {
                    if !lhs.is_zero() {
                        return Err(Error::invariant(format!(
                            "∂P ≠ 0 at degree {} piece {j} with zero target piece",
                            cc.degree_of(idx)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_chain_complex;
    use crate::exactla::rat;
    use crate::graphs::{Graph, GraphSequence};

    fn g(n: usize, edges: &[(u8, u8)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn complex_of(graphs: Vec<Graph>) -> ChainComplexData {
        build_chain_complex(&GraphSequence::new(graphs).unwrap(), 7).unwrap()
    }

    fn k3_complex() -> ChainComplexData {
        complex_of(vec![g(3, &[(1, 2), (1, 3), (2, 3)])])
    }

    fn pair_complex() -> ChainComplexData {
        complex_of(vec![g(4, &[(1, 2)]), g(4, &[(3, 4)])])
    }

    #[test]
    fn k3_hodge_table() {
        let t = hodge_table(&k3_complex(), true).unwrap();
        assert_eq!(t.chain_dims[0], vec![1, 0, 0]);
        assert_eq!(t.chain_dims[1], vec![3, 3, 0]);
        assert_eq!(t.chain_dims[2], vec![0, 0, 0]);
        let hom = t.homology_dims.as_ref().unwrap();
        assert_eq!(hom[0], vec![0, 0, 0]);
        assert_eq!(hom[1], vec![2, 3, 0]);
        assert_eq!(t.euler, vec![2, 3, 0]);
    }

    #[test]
    fn single_edge_hodge_table() {
        let t = hodge_table(&complex_of(vec![g(2, &[(1, 2)])]), true).unwrap();
        assert_eq!(t.chain_dims[0], vec![1, 0]);
        assert_eq!(t.chain_dims[1], vec![0, 0]);
        assert_eq!(t.homology_dims.as_ref().unwrap()[0], vec![1, 0]);
        assert_eq!(t.euler, vec![-1, 0]);
    }

    #[test]
    fn pair_hodge_table() {
        let t = hodge_table(&pair_complex(), true).unwrap();
        assert_eq!(t.chain_dims[1], vec![1, 1, 0, 0]);
        let hom = t.homology_dims.as_ref().unwrap();
        assert_eq!(hom[0], vec![0, 0, 0, 0]);
        assert_eq!(hom[1], vec![0, 1, 0, 0]);
        assert_eq!(t.euler, vec![0, 1, 0, 0]);
    }

    #[test]
    fn pair_symmetric_subcomplex_is_surjective_onto_degree_minus_one() {
        let cc = pair_complex();
        let sub = hodge_subcomplex(&cc, 1).unwrap();
        assert_eq!(sub.dims, vec![1, 1, 0, 0]);
        // The symmetric piece basis is (½, ½); its boundary hits −1 times
        // the degree −1 basis vector, i.e. the boundary of the full
        // symmetric combination is −2·(one-block partition).
        assert_eq!(*sub.boundaries[1].get(0, 0), rat(-1));
        assert_eq!(sub.betti_numbers(), vec![0, 0, 0, 0]);

        let alt = hodge_subcomplex(&cc, 2).unwrap();
        assert_eq!(alt.dims, vec![0, 1, 0, 0]);
        assert_eq!(alt.betti_numbers(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn k3_second_piece_is_killed_by_the_boundary() {
        let sub = hodge_subcomplex(&k3_complex(), 2).unwrap();
        assert_eq!(sub.dims, vec![0, 3, 0]);
        assert!(sub.boundaries[1].is_zero());
        assert_eq!(sub.betti_numbers(), vec![0, 3, 0]);
    }

    #[test]
    fn out_of_range_piece_is_rejected() {
        assert!(hodge_subcomplex(&k3_complex(), 0).is_err());
        assert!(hodge_subcomplex(&k3_complex(), 4).is_err());
    }

    #[test]
    fn triple_disjoint_edges_concentrates_in_the_top_piece() {
        let cc = complex_of(vec![g(6, &[(1, 2)]), g(6, &[(3, 4)]), g(6, &[(5, 6)])]);
        let t = hodge_table(&cc, true).unwrap();
        // Degree 1 is a single free S_3 orbit: dims c(3,j) = (2,3,1).
        assert_eq!(t.chain_dims[2], vec![2, 3, 1, 0, 0, 0]);
        // Degree 0: three 2-element orbits split evenly.
        assert_eq!(t.chain_dims[1], vec![3, 3, 0, 0, 0, 0]);
        let hom = t.homology_dims.as_ref().unwrap();
        assert_eq!(hom[2], vec![0, 0, 1, 0, 0, 0]);
        assert_eq!(
            hom.iter().flatten().sum::<usize>(),
            1,
            "homology is one-dimensional in total"
        );
        assert_eq!(t.euler, vec![0, 0, -1, 0, 0, 0]);
    }

    #[test]
    fn commutation_holds_on_small_complexes() {
        check_commutation(&k3_complex()).unwrap();
        check_commutation(&pair_complex()).unwrap();
        check_commutation(&complex_of(vec![g(4, &[(1, 2), (2, 3), (3, 4)])])).unwrap();
        check_commutation(&complex_of(vec![g(2, &[(1, 2)])])).unwrap();
    }

    #[test]
    fn chain_dimension_wrappers_agree() {
        let cc = k3_complex();
        let table = hodge_table(&cc, true).unwrap();
        assert_eq!(hodge_chain_dimensions(&cc).unwrap(), table.chain_dims);
        assert_eq!(
            hodge_homology_dimensions(&cc).unwrap(),
            *table.homology_dims.as_ref().unwrap()
        );
        assert_eq!(euler_characteristics(&cc).unwrap(), table.euler);
    }
}
