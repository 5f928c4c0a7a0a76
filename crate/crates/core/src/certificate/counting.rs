use serde::{Deserialize, Serialize};

/// Abstract set `S = {0, ..., size - 1}` with a marked subset `R`, a family of
/// subsets `C_z^1, ..., C_z^{n_z}` for each marked `z`, and a block size `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountingInstance {
    pub size: usize,
    pub marked: Vec<usize>,
    /// `families[i]` belongs to `marked[i]`.
    pub families: Vec<Vec<Vec<usize>>>,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub preconditions_ok: bool,
    /// `|S| >= K (|R| + 2)`.
    pub conclusion_ok: bool,
    pub violations: Vec<String>,
}

trait SetOps: Sized {
    fn or(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn subset_of(&self, other: &Self) -> bool;
    fn disjoint(&self, other: &Self) -> bool;
}

impl SetOps for u32 {
    fn or(&self, other: &Self) -> Self {
        self | other
    }
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    fn subset_of(&self, other: &Self) -> bool {
        self & !other == 0
    }
    fn disjoint(&self, other: &Self) -> bool {
        self & other == 0
    }
}

impl SetOps for Vec<u64> {
    fn or(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a | b).collect()
    }
    fn and_not(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a & !b).collect()
    }
    fn subset_of(&self, other: &Self) -> bool {
        self.iter().zip(other).all(|(a, b)| a & !b == 0)
    }
    fn disjoint(&self, other: &Self) -> bool {
        self.iter().zip(other).all(|(a, b)| a & b == 0)
    }
}

/// A marked element with its family, `full = {z} u C_z`.
struct Star<T> {
    full: T,
    blocks: Vec<T>,
}

/// One of the four admissible relations between two stars.
fn related<T: SetOps>(a: &Star<T>, b: &Star<T>) -> bool {
    if a.full.disjoint(&b.full) {
        return true;
    }
    if a.blocks.iter().any(|ci| b.full.subset_of(ci)) || b.blocks.iter().any(|cj| a.full.subset_of(cj)) {
        return true;
    }
    a.blocks.iter().any(|ci| {
        let a_rest = a.full.and_not(ci);
        b.blocks
            .iter()
            .any(|cj| b.full.and_not(cj).subset_of(ci) && a_rest.subset_of(cj))
    })
}

/// Checks the hypotheses on the families and on every pair of distinct marked
/// elements; violations are listed, never raised.
pub fn counting_lemma_check(inst: &CountingInstance) -> CountingReport {
    let mut violations = Vec::new();
    let words = inst.size.div_ceil(64).max(1);
    let set = |xs: &[usize]| -> Vec<u64> {
        let mut v = vec![0u64; words];
        for &x in xs {
            if x < inst.size {
                v[x / 64] |= 1 << (x % 64);
            }
        }
        v
    };
    let singleton = |x: usize| -> Vec<u64> {
        let mut v = vec![0u64; words];
        if x < inst.size {
            v[x / 64] |= 1 << (x % 64);
        }
        v
    };
    if inst.k == 0 {
        violations.push("K must be positive".into());
    }
    if inst.marked.is_empty() {
        violations.push("R must be non-empty".into());
    }
    if inst.families.len() != inst.marked.len() {
        violations.push(format!("{} families for {} marked elements", inst.families.len(), inst.marked.len()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &z in &inst.marked {
        if z >= inst.size {
            violations.push(format!("marked element {z} is outside S"));
        }
        if !seen.insert(z) {
            violations.push(format!("marked element {z} listed twice"));
        }
    }
    let mut stars = Vec::new();
    for (&z, fam) in inst.marked.iter().zip(&inst.families) {
        if fam.len() < 3 {
            violations.push(format!("family of {z} has {} members (< 3)", fam.len()));
        }
        let mut union = vec![0u64; words];
        let mut blocks = Vec::new();
        for (i, c) in fam.iter().enumerate() {
            if let Some(x) = c.iter().find(|&&x| x >= inst.size) {
                violations.push(format!("C_{z}^{} contains {x}, outside S", i + 1));
            }
            let b = set(c);
            let distinct = b.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            if distinct < inst.k.max(1) {
                violations.push(format!("|C_{z}^{}| = {distinct} < K = {}", i + 1, inst.k));
            }
            if c.contains(&z) {
                violations.push(format!("C_{z}^{} contains {z}", i + 1));
            }
            if !b.disjoint(&union) {
                violations.push(format!("C_{z}^{} meets an earlier member of the family", i + 1));
            }
            union = union.or(&b);
            blocks.push(b);
        }
        stars.push((z, Star {
            full: union.or(&singleton(z)),
            blocks,
        }));
    }
    for (i, (z, a)) in stars.iter().enumerate() {
        for (w, b) in &stars[i + 1..] {
            if !related(a, b) {
                violations.push(format!("pair ({z}, {w}) fits none of the four cases"));
            }
        }
    }
    let marked = inst.marked.iter().collect::<std::collections::BTreeSet<_>>().len();
    CountingReport {
        preconditions_ok: violations.is_empty(),
        conclusion_ok: inst.size >= inst.k * (marked + 2),
        violations,
    }
}

/// Tally of an exhaustive search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub max_size: usize,
    /// Valid instances visited (marked set `{0, ..., |R| - 1}`).
    pub instances: u64,
    pub counterexamples: u64,
    /// Largest `|R|` seen among valid instances, per `|S|` (index = `|S|`).
    pub largest_marked: [usize; 8],
}

/// Families of at least three disjoint non-empty blocks in `others`, blocks
/// listed in increasing order of their least element.
fn families_over(others: &[usize]) -> Vec<Vec<u32>> {
    fn grow(rest: &[usize], blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&x, tail)) = rest.split_first() else {
            if blocks.len() >= 3 {
                out.push(blocks.clone());
            }
            return;
        };
        grow(tail, blocks, out);
        for i in 0..blocks.len() {
            blocks[i] |= 1 << x;
            grow(tail, blocks, out);
            blocks[i] &= !(1 << x);
        }
        blocks.push(1 << x);
        grow(tail, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    grow(others, &mut Vec::new(), &mut out);
    out
}

/// Enumerates every instance with `K = 1`, `|S| <= max_size <= 7` and
/// `R = {0, ..., |R| - 1}` satisfying the hypotheses, and counts those
/// violating `|S| >= |R| + 2`. Relabelling makes the choice of `R` general.
pub fn enumerate_counting_instances(max_size: usize) -> EnumerationSummary {
    assert!(max_size <= 7, "exhaustive search is limited to |S| <= 7");
    let mut summary = EnumerationSummary {
        max_size,
        ..Default::default()
    };
    for size in 1..=max_size {
        let stars: Vec<Vec<Star<u32>>> = (0..size)
            .map(|z| {
                let others: Vec<usize> = (0..size).filter(|&x| x != z).collect();
                families_over(&others)
                    .into_iter()
                    .map(|blocks| Star {
                        full: blocks.iter().fold(1u32 << z, |u, b| u | b),
                        blocks,
                    })
                    .collect()
            })
            .collect();
        let mut chosen: Vec<usize> = Vec::new();
        search(&stars, &mut chosen, size, &mut summary);
    }
    summary
}

fn search(stars: &[Vec<Star<u32>>], chosen: &mut Vec<usize>, size: usize, summary: &mut EnumerationSummary) {
    let z = chosen.len();
    if z == size {
        return;
    }
    for (idx, star) in stars[z].iter().enumerate() {
        if chosen.iter().enumerate().all(|(w, &j)| related(&stars[w][j], star)) {
            chosen.push(idx);
            let marked = chosen.len();
            summary.instances += 1;
            summary.largest_marked[size] = summary.largest_marked[size].max(marked);
            if size < marked + 2 {
                summary.counterexamples += 1;
            }
            search(stars, chosen, size, summary);
            chosen.pop();
        }
    }
}
