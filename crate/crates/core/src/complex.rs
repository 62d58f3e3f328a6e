//! Ordered set partitions, face membership for a graph sequence, chain
//! groups, boundary matrices, and Betti numbers.
//!
//! Degrees run from −1 (the one-block partition, always a face because
//! every member graph is nonempty) up to n−2. Internally degree r lives at
//! index r+1, so index idx holds the partitions into idx+1 blocks. Bases
//! are sorted by the canonical serialization of the partition, which fixes
//! every matrix byte-for-byte across runs.

use crate::error::{Error, Result};
use crate::exactla::SparseIntMatrix;
use crate::graphs::GraphSequence;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Ordered tuple of disjoint nonempty blocks covering {1..n}; the block
/// order is meaningful, vertices within a block are kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<u8>>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<Vec<u8>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::input("an ordered set partition needs a block"));
        }
        let mut blocks = blocks;
        let mut seen = 0u64;
        let mut total = 0usize;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::input("empty block in ordered set partition"));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if v < 1 || v > 64 {
                    return Err(Error::input(format!("vertex {v} out of range")));
                }
                let bit = 1u64 << (v - 1);
                if seen & bit != 0 {
                    return Err(Error::input(format!("vertex {v} appears twice")));
                }
                seen |= bit;
                total += 1;
            }
        }
        // Coverage must be exactly {1..n} for n = total vertices seen.
        if seen != (1u64 << total) - 1 {
            return Err(Error::input(
                "blocks must cover a contiguous vertex set 1..n",
            ));
        }
        Ok(OrderedSetPartition { blocks })
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<Vec<u8>>) -> Self {
        OrderedSetPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// One bitmask per block, bit v−1 for vertex v.
    pub fn block_masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &v| m | 1 << (v - 1)))
            .collect()
    }

    /// The partition with blocks at positions i and i+1 merged (0-based).
    fn merge_adjacent(&self, i: usize) -> OrderedSetPartition {
        let mut blocks = Vec::with_capacity(self.blocks.len() - 1);
        blocks.extend_from_slice(&self.blocks[..i]);
        let mut merged = self.blocks[i].clone();
        merged.extend_from_slice(&self.blocks[i + 1]);
        merged.sort_unstable();
        blocks.push(merged);
        blocks.extend_from_slice(&self.blocks[i + 2..]);
        OrderedSetPartition { blocks }
    }
}

impl fmt::Display for OrderedSetPartition {
    /// Blocks joined by '|', vertices by ',': "1,2|3".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// All ordered partitions of {1..n} into exactly k nonempty blocks, in
/// lexicographic order of canonical serialization. There are k!·S(n,k) of
/// them (S = Stirling numbers of the second kind).
pub fn enumerate_ordered_partitions(n: usize, k: usize) -> Result<Vec<OrderedSetPartition>> {
    if k < 1 || k > n {
        return Err(Error::input(format!(
            "block count {k} out of range 1..={n}"
        )));
    }
    // Block assignments vertex-by-vertex; each surjective assignment is a
    // distinct ordered partition.
    let mut assign = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let used = assign.iter().fold(0usize, |m, &a| m | 1 << a);
        if used == (1 << k) - 1 {
            let mut blocks = vec![Vec::new(); k];
            for (v, &a) in assign.iter().enumerate() {
                blocks[a].push(v as u8 + 1);
            }
            out.push(OrderedSetPartition { blocks });
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort_unstable();
                return Ok(out);
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < k {
                break;
            }
            assign[pos] = 0;
        }
    }
}

/// Process-wide cache: partition lists are reused across every complex on
/// the same vertex count.
fn ordered_partitions_cached(n: usize, k: usize) -> Result<Arc<Vec<OrderedSetPartition>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<OrderedSetPartition>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, k)) {
        return Ok(hit.clone());
    }
    let fresh = Arc::new(enumerate_ordered_partitions(n, k)?);
    cache
        .lock()
        .unwrap()
        .entry((n, k))
        .or_insert_with(|| fresh.clone());
    Ok(fresh)
}

/// Face test: every member graph must have some edge contained in a
/// single block.
pub fn is_face(p: &OrderedSetPartition, seq: &GraphSequence) -> Result<bool> {
    if p.n() != seq.n() {
        return Err(Error::input(format!(
            "partition covers {} vertices but the sequence has {}",
            p.n(),
            seq.n()
        )));
    }
    let masks = p.block_masks();
    Ok(seq
        .graphs()
        .iter()
        .all(|g| face_condition(&masks, &g.edge_masks())))
}

fn face_condition(block_masks: &[u64], edge_masks: &[u64]) -> bool {
    edge_masks
        .iter()
        .any(|&e| block_masks.iter().any(|&b| b & e == e))
}

/// The chain complex of the intersection coloring complex of a sequence.
pub struct ChainComplexData {
    n: usize,
    m: usize,
    bases: Vec<Vec<OrderedSetPartition>>,
    /// boundaries[idx] maps chains at index idx to index idx−1;
    /// boundaries[0] is the zero map out of the degree −1 group.
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplexData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sequence_len(&self) -> usize {
        self.m
    }

    /// Number of degree slots (degrees −1..n−2 live at indices 0..n−1).
    pub fn degree_slots(&self) -> usize {
        self.bases.len()
    }

    /// The homological degree stored at an index.
    pub fn degree_of(&self, idx: usize) -> i64 {
        idx as i64 - 1
    }

    pub fn basis(&self, idx: usize) -> &[OrderedSetPartition] {
        &self.bases[idx]
    }

    pub fn boundary(&self, idx: usize) -> &SparseIntMatrix {
        &self.boundaries[idx]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    /// Reduced Betti numbers: dim H at index idx is
    /// dim C − rank ∂(idx) − rank ∂(idx+1).
    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(|b| b.rank()).collect();
        (0..self.bases.len())
            .map(|idx| {
                let above = ranks.get(idx + 1).copied().unwrap_or(0);
                self.bases[idx].len() - ranks[idx] - above
            })
            .collect()
    }
}

/// Build the chain complex for a sequence: enumerate and filter bases at
/// every degree, assemble the sparse boundary matrices, and verify that
/// consecutive boundaries compose to zero.
pub fn build_chain_complex(seq: &GraphSequence, max_n: usize) -> Result<ChainComplexData> {
    let n = seq.n();
    if n > max_n {
        return Err(Error::budget(format!(
            "complex on {n} vertices exceeds the n ≤ {max_n} guard"
        )));
    }
    let edge_masks: Vec<Vec<u64>> = seq.graphs().iter().map(|g| g.edge_masks()).collect();
    let mut bases: Vec<Vec<OrderedSetPartition>> = Vec::with_capacity(n);
    for k in 1..=n {
        let all = ordered_partitions_cached(n, k)?;
        let faces: Vec<OrderedSetPartition> = all
            .iter()
            .filter(|p| {
                let masks = p.block_masks();
                edge_masks.iter().all(|em| face_condition(&masks, em))
            })
            .cloned()
            .collect();
        bases.push(faces);
    }

    let mut boundaries = Vec::with_capacity(n);
    boundaries.push(SparseIntMatrix::new(0, bases[0].len()));
    for idx in 1..n {
        let (target, source) = (&bases[idx - 1], &bases[idx]);
        let mut m = SparseIntMatrix::new(target.len(), source.len());
        for (c, face) in source.iter().enumerate() {
            let k = face.block_count();
            for i in 0..k - 1 {
                let merged = face.merge_adjacent(i);
                let row = target.binary_search(&merged).map_err(|_| {
                    Error::invariant(format!(
                        "boundary target {merged} of {face} is not a face"
                    ))
                })?;
                // Merging blocks i+1 and i+2 in 1-based numbering carries
                // the sign (−1)^(i+1).
                let sign = if i % 2 == 0 { -1 } else { 1 };
                m.add_entry(row, c, sign);
            }
        }
        boundaries.push(m);
    }

    for idx in 2..n {
        if !boundaries[idx - 1].compose_is_zero(&boundaries[idx]) {
            return Err(Error::invariant(format!(
                "boundary composition at index {idx} is nonzero"
            )));
        }
    }

    Ok(ChainComplexData {
        n,
        m: seq.len(),
        bases,
        boundaries,
    })
}
