//! The weight-graded chain complex attached to a binary pattern set:
//! chains are tuples (z; x_0, ..., x_n) with z avoiding X-complement
//! patterns and each attachment avoiding Z-complement patterns, the
//! boundary collapses cups of z and grafts the flanking attachments.

use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::trees::{graft, Label, LabelledTree, ShapeNode, TreeShape};

/// Default weight bound for complex construction.
pub const DEFAULT_WEIGHT_BOUND: usize = 6;

/// A basis chain (z; x_0, ..., x_n): z in Z_n, attachment x_j in X_{i_j},
/// homological degree n + 1, weight n + i_0 + ... + i_n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainBasisElement {
    pub z: LabelledTree,
    pub attachments: Vec<LabelledTree>,
}

impl ChainBasisElement {
    pub fn new(z: LabelledTree, attachments: Vec<LabelledTree>) -> Result<Self> {
        if attachments.len() != z.degree() + 1 {
            return Err(Error::Invariant(format!(
                "expected {} attachments for a degree-{} tree, got {}",
                z.degree() + 1,
                z.degree(),
                attachments.len()
            )));
        }
        Ok(ChainBasisElement { z, attachments })
    }

    pub fn homological_degree(&self) -> usize {
        self.z.degree() + 1
    }

    pub fn weight(&self) -> usize {
        self.z.degree() + self.attachments.iter().map(|x| x.degree()).sum::<usize>()
    }
}

/// The face map d_i. Returns Ok(None) for the zero outcomes: vertex i of z
/// is not a cup, or the grafted attachment picks up a pattern outside X.
pub fn face(
    x: &PatternSet,
    element: &ChainBasisElement,
    i: usize,
) -> Result<Option<ChainBasisElement>> {
    let n = element.z.degree();
    if i < 1 || i > n {
        return Err(Error::Invariant(format!(
            "face index {i} out of range 1..={n}"
        )));
    }
    if !element.z.cups().contains(&i) {
        return Ok(None);
    }
    let grafted = graft(
        &[
            element.attachments[i - 1].clone(),
            element.attachments[i].clone(),
        ],
        element.z.label(i),
    )?;
    if !x.admits(&grafted) {
        return Ok(None);
    }
    let z = delete_cup(&element.z, i);
    debug_assert!(x.complement().admits(&z));
    let mut attachments = Vec::with_capacity(n);
    attachments.extend_from_slice(&element.attachments[..i - 1]);
    attachments.push(grafted);
    attachments.extend_from_slice(&element.attachments[i + 1..]);
    let out = ChainBasisElement { z, attachments };
    debug_assert_eq!(out.weight(), element.weight());
    Ok(Some(out))
}

/// Replace the cup at vertex `i` by a leaf and drop its label.
pub fn delete_cup(t: &LabelledTree, target: usize) -> LabelledTree {
    fn walk(node: &ShapeNode, counter: &mut usize, target: usize) -> ShapeNode {
        match node {
            ShapeNode::Leaf => ShapeNode::Leaf,
            ShapeNode::Vertex(children) => {
                let left = walk(&children[0], counter, target);
                *counter += 1;
                let me = *counter;
                let right = walk(&children[1], counter, target);
                if me == target {
                    ShapeNode::Leaf
                } else {
                    ShapeNode::Vertex(vec![left, right])
                }
            }
        }
    }
    let mut counter = 0;
    let root = walk(t.shape().root(), &mut counter, target);
    let shape = TreeShape::new(t.arity(), root).expect("cup deletion preserves arity");
    let mut labels = t.labels().to_vec();
    labels.remove(target - 1);
    LabelledTree::new(shape, labels).expect("cup deletion drops one label")
}

/// Replace leaf number `leaf_no` (0-based, left to right) by a cup labelled
/// `label`. The new vertex gets number `leaf_no + 1`. Inverse of
/// [`delete_cup`].
pub fn insert_cup(t: &LabelledTree, leaf_no: usize, label: Label) -> LabelledTree {
    fn walk(node: &ShapeNode, leaves: &mut usize, target: usize) -> ShapeNode {
        match node {
            ShapeNode::Leaf => {
                let me = *leaves;
                *leaves += 1;
                if me == target {
                    ShapeNode::Vertex(vec![ShapeNode::Leaf, ShapeNode::Leaf])
                } else {
                    ShapeNode::Leaf
                }
            }
            ShapeNode::Vertex(children) => ShapeNode::Vertex(
                children
                    .iter()
                    .map(|c| walk(c, leaves, target))
                    .collect(),
            ),
        }
    }
    let mut leaves = 0;
    let root = walk(t.shape().root(), &mut leaves, leaf_no);
    let shape = TreeShape::new(t.arity(), root).expect("cup insertion preserves arity");
    let mut labels = t.labels().to_vec();
    labels.insert(leaf_no, label);
    LabelledTree::new(shape, labels).expect("cup insertion adds one label")
}

// Compact basis address: (z table index, composition index, attachment
// table indices). The linear index within a homological degree is
// z * block + comp_offset + sum(att_j * stride_j).
#[derive(Debug, Clone)]
struct DegreeLayout {
    n: usize, // z degree; homological degree n + 1
    comps: Vec<Vec<usize>>,
    comp_offsets: Vec<usize>,
    strides: Vec<Vec<usize>>,
    block: usize, // elements per z tree
    dim: usize,
}

#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    /// Entries of each column as (row, coefficient).
    pub cols: Vec<Vec<(u32, i32)>>,
}

/// The weight-w graded piece of the complex, with boundary matrices.
pub struct WeightedComplex {
    weight: usize,
    x: PatternSet,
    z: PatternSet,
    z_trees: Vec<Vec<LabelledTree>>,
    x_trees: Vec<Vec<LabelledTree>>,
    z_index: Vec<HashMap<LabelledTree, u32>>,
    x_index: Vec<HashMap<LabelledTree, u32>>,
    layouts: Vec<DegreeLayout>, // layouts[n] describes homological degree n + 1
    /// boundaries[n-1] maps degree n + 1 to degree n, for n = 1..=w.
    boundaries: Vec<SparseMatrix>,
}

/// Build the weight-w complex of a binary pattern set X.
pub fn build_complex(x: &PatternSet, weight: usize) -> Result<WeightedComplex> {
    build_complex_with_bound(x, weight, DEFAULT_WEIGHT_BOUND)
}

pub fn build_complex_with_bound(
    x: &PatternSet,
    weight: usize,
    bound: usize,
) -> Result<WeightedComplex> {
    if x.arity() != 2 {
        return Err(Error::Config(
            "the chain complex is defined for binary trees only".into(),
        ));
    }
    if weight > bound {
        return Err(Error::SizeLimit {
            what: "complex weight",
            value: weight,
            bound,
        });
    }
    let z = x.complement();
    let gen_bound = weight.max(crate::patterns::DEFAULT_BRUTE_BOUND);
    let mut z_trees = Vec::with_capacity(weight + 1);
    let mut x_trees = Vec::with_capacity(weight + 1);
    for n in 0..=weight {
        z_trees.push(z.generate_with_bound(n, gen_bound)?.trees.unwrap());
        x_trees.push(x.generate_with_bound(n, gen_bound)?.trees.unwrap());
    }
    let index_of = |tables: &Vec<Vec<LabelledTree>>| -> Vec<HashMap<LabelledTree, u32>> {
        tables
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), i as u32))
                    .collect()
            })
            .collect()
    };
    let z_index = index_of(&z_trees);
    let x_index = index_of(&x_trees);

    // layouts per z-degree n: compositions of weight - n into n + 1 parts
    let mut layouts = Vec::with_capacity(weight + 1);
    for n in 0..=weight {
        let comps = compositions(weight - n, n + 1);
        let mut comp_offsets = Vec::with_capacity(comps.len());
        let mut strides = Vec::with_capacity(comps.len());
        let mut block = 0usize;
        for comp in &comps {
            comp_offsets.push(block);
            let mut stride = vec![0usize; comp.len()];
            let mut acc = 1usize;
            for j in (0..comp.len()).rev() {
                stride[j] = acc;
                acc *= x_trees[comp[j]].len();
            }
            strides.push(stride);
            block += acc;
        }
        let dim = z_trees[n].len() * block;
        layouts.push(DegreeLayout {
            n,
            comps,
            comp_offsets,
            strides,
            block,
            dim,
        });
    }

    let mut complex = WeightedComplex {
        weight,
        x: x.clone(),
        z,
        z_trees,
        x_trees,
        z_index,
        x_index,
        layouts,
        boundaries: Vec::new(),
    };
    for n in 1..=weight {
        complex.boundaries.push(complex.build_boundary(n)?);
    }
    Ok(complex)
}

// Ordered sums of `total` into `parts` nonnegative integers, lex ascending.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut comp = vec![first];
            comp.append(&mut rest);
            out.push(comp);
        }
    }
    out
}

impl WeightedComplex {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn pattern_set(&self) -> &PatternSet {
        &self.x
    }

    /// Homological degrees run 1..=weight+1.
    pub fn max_degree(&self) -> usize {
        self.weight + 1
    }

    pub fn dimension(&self, degree: usize) -> usize {
        assert!((1..=self.max_degree()).contains(&degree));
        self.layouts[degree - 1].dim
    }

    pub fn dimensions(&self) -> Vec<usize> {
        (1..=self.max_degree()).map(|d| self.dimension(d)).collect()
    }

    /// The boundary matrix from degree `from` to degree `from - 1`.
    pub fn boundary(&self, from: usize) -> &SparseMatrix {
        assert!((2..=self.max_degree()).contains(&from));
        &self.boundaries[from - 2]
    }

    /// Reconstruct the basis element at `index` within homological `degree`.
    pub fn element(&self, degree: usize, index: usize) -> ChainBasisElement {
        let layout = &self.layouts[degree - 1];
        let z_idx = index / layout.block;
        let mut rem = index % layout.block;
        // locate the composition by offset
        let mut c = layout.comp_offsets.len() - 1;
        while layout.comp_offsets[c] > rem {
            c -= 1;
        }
        rem -= layout.comp_offsets[c];
        let comp = &layout.comps[c];
        let strides = &layout.strides[c];
        let mut attachments = Vec::with_capacity(comp.len());
        for j in 0..comp.len() {
            let idx = rem / strides[j];
            rem %= strides[j];
            attachments.push(self.x_trees[comp[j]][idx].clone());
        }
        ChainBasisElement {
            z: self.z_trees[layout.n][z_idx].clone(),
            attachments,
        }
    }

    /// Linear index of a basis element within its homological degree.
    pub fn index_of(&self, element: &ChainBasisElement) -> Option<usize> {
        let n = element.z.degree();
        if n + 1 > self.max_degree() || element.weight() != self.weight {
            return None;
        }
        let layout = &self.layouts[n];
        let z_idx = *self.z_index[n].get(&element.z)? as usize;
        let comp: Vec<usize> = element.attachments.iter().map(|x| x.degree()).collect();
        let c = layout.comps.iter().position(|k| *k == comp)?;
        let mut offset = layout.comp_offsets[c];
        for (j, x) in element.attachments.iter().enumerate() {
            let idx = *self.x_index[comp[j]].get(x)? as usize;
            offset += idx * layout.strides[c][j];
        }
        Some(z_idx * layout.block + offset)
    }

    fn build_boundary(&self, n: usize) -> Result<SparseMatrix> {
        // maps degree n+1 (z in Z_n) to degree n
        let layout = &self.layouts[n];
        let mut cols = Vec::with_capacity(layout.dim);
        for index in 0..layout.dim {
            let element = self.element(n + 1, index);
            let mut entries = Vec::new();
            for i in 1..=n {
                if let Some(image) = face(&self.x, &element, i)? {
                    let row = self
                        .index_of(&image)
                        .ok_or_else(|| Error::Invariant("face image not in basis".into()))?;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    entries.push((row as u32, sign));
                }
            }
            cols.push(entries);
        }
        Ok(SparseMatrix {
            nrows: self.layouts[n - 1].dim,
            ncols: layout.dim,
            cols,
        })
    }

    /// True iff D_n . D_{n+1} = 0 for all n, with a spot check of the
    /// presimplicial relation d_i d_j = d_{j-1} d_i on sampled elements.
    pub fn check_d_squared(&self) -> bool {
        for n in 1..self.weight {
            let low = &self.boundaries[n - 1]; // degree n+1 -> n
            let high = &self.boundaries[n]; // degree n+2 -> n+1
            for col in &high.cols {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for &(mid, s1) in col {
                    for &(row, s2) in &low.cols[mid as usize] {
                        *acc.entry(row).or_insert(0) += i64::from(s1) * i64::from(s2);
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        self.spot_check_presimplicial()
    }

    fn spot_check_presimplicial(&self) -> bool {
        for n in 2..=self.weight {
            let layout = &self.layouts[n];
            let step = (layout.dim / 16).max(1);
            for index in (0..layout.dim).step_by(step) {
                let e = self.element(n + 1, index);
                for j in 2..=n {
                    for i in 1..j {
                        let lhs = match face(&self.x, &e, j).unwrap() {
                            Some(ej) => face(&self.x, &ej, i).unwrap(),
                            None => None,
                        };
                        let rhs = match face(&self.x, &e, i).unwrap() {
                            Some(ei) => face(&self.x, &ei, j - 1).unwrap(),
                            None => None,
                        };
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Exact homology ranks per homological degree 1..=weight+1, over the
    /// rationals.
    pub fn homology_ranks(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(matrix_rank).collect();
        let mut out = Vec::with_capacity(self.max_degree());
        for d in 1..=self.max_degree() {
            let dim = self.dimension(d);
            let rank_out = if d >= 2 { ranks[d - 2] } else { 0 }; // rank of d: C_d -> C_{d-1}
            let rank_in = if d <= self.weight { ranks[d - 1] } else { 0 };
            out.push(dim - rank_out - rank_in);
        }
        out
    }

    /// Alternating sum of dimensions over homological degrees.
    pub fn euler_characteristic(&self) -> BigInt {
        let mut chi = BigInt::zero();
        for d in 1..=self.max_degree() {
            let term = BigInt::from(self.dimension(d));
            if d % 2 == 0 {
                chi -= term;
            } else {
                chi += term;
            }
        }
        chi
    }

    // All preimages of an element under any face map, by re-inserting a cup
    // at each leaf of z and splitting the matching attachment at its root.
    fn preimages(&self, element: &ChainBasisElement) -> Vec<(usize, ChainBasisElement)> {
        let n = element.z.degree();
        let mut out = Vec::new();
        for leaf in 0..=n.min(element.attachments.len() - 1) {
            let x_here = &element.attachments[leaf];
            if x_here.is_leaf() {
                continue;
            }
            let (children, label) = x_here.ungraft().expect("non-leaf attachment");
            let z_hat = insert_cup(&element.z, leaf, label);
            if !self.z.admits(&z_hat) {
                continue;
            }
            let mut attachments = Vec::with_capacity(n + 2);
            attachments.extend_from_slice(&element.attachments[..leaf]);
            attachments.extend(children);
            attachments.extend_from_slice(&element.attachments[leaf + 1..]);
            let candidate = ChainBasisElement {
                z: z_hat,
                attachments,
            };
            debug_assert_eq!(
                face(&self.x, &candidate, leaf + 1).unwrap().as_ref(),
                Some(element)
            );
            out.push((leaf + 1, candidate));
        }
        out
    }

    /// Partition the basis into the subcomplexes generated by extremal
    /// elements. Errors if any element fails to have exactly one extremal
    /// ancestor, or if a block is not a cube of face images.
    pub fn extremal_decomposition(&self) -> Result<Vec<ExtremalBlock>> {
        // extremal ancestors per element, memoized top-down by degree
        let mut ancestors: Vec<HashMap<usize, Vec<(usize, usize)>>> =
            vec![HashMap::new(); self.max_degree() + 1];
        for degree in (1..=self.max_degree()).rev() {
            let dim = self.dimension(degree);
            for index in 0..dim {
                let element = self.element(degree, index);
                let pre = self.preimages(&element);
                let mut anc: Vec<(usize, usize)> = Vec::new();
                if pre.is_empty() {
                    anc.push((degree, index));
                } else {
                    for (_, p) in &pre {
                        let p_idx = self
                            .index_of(p)
                            .ok_or_else(|| Error::Invariant("preimage not in basis".into()))?;
                        for a in &ancestors[degree + 1][&p_idx] {
                            if !anc.contains(a) {
                                anc.push(*a);
                            }
                        }
                    }
                }
                if anc.len() != 1 {
                    return Err(Error::Invariant(format!(
                        "basis element (degree {degree}, index {index}) has {} extremal \
                         ancestors; expected exactly one",
                        anc.len()
                    )));
                }
                ancestors[degree].insert(index, anc);
            }
            // drop the level above once consumed to bound memory
            if degree < self.max_degree() {
                ancestors[degree + 1] = HashMap::new();
            }
        }
        // second pass: group elements by extremal ancestor
        // (re-walk, since per-level maps were dropped; cheap relative to
        // the first pass which already verified uniqueness)
        let mut blocks: HashMap<(usize, usize), ExtremalBlock> = HashMap::new();
        let mut level: HashMap<usize, (usize, usize)> = HashMap::new();
        for degree in (1..=self.max_degree()).rev() {
            let mut next_level: HashMap<usize, (usize, usize)> = HashMap::new();
            for index in 0..self.dimension(degree) {
                let element = self.element(degree, index);
                let pre = self.preimages(&element);
                let key = if pre.is_empty() {
                    (degree, index)
                } else {
                    let p_idx = self.index_of(&pre[0].1).unwrap();
                    level[&p_idx]
                };
                next_level.insert(index, key);
                let entry = blocks.entry(key).or_insert_with(|| {
                    let kappa = if pre.is_empty() {
                        element.z.cups().len()
                    } else {
                        0 // filled when the extremal element itself arrives
                    };
                    ExtremalBlock {
                        extremal_degree: key.0,
                        extremal_index: key.1,
                        kappa,
                        members: vec![Vec::new(); self.max_degree() + 1],
                    }
                });
                if pre.is_empty() {
                    entry.kappa = element.z.cups().len();
                }
                entry.members[degree].push(index);
            }
            level = next_level;
        }
        let mut out: Vec<ExtremalBlock> = blocks.into_values().collect();
        out.sort_by_key(|b| (b.extremal_degree, b.extremal_index));
        self.verify_blocks(&out)?;
        Ok(out)
    }

    // Each block with kappa cups must hold C(kappa, r) elements r steps
    // below its extremal degree (2^kappa in total), the blocks must
    // partition the basis, and every boundary entry must stay inside its
    // column's block.
    fn verify_blocks(&self, blocks: &[ExtremalBlock]) -> Result<()> {
        let mut owner: Vec<HashMap<usize, usize>> = vec![HashMap::new(); self.max_degree() + 1];
        for (b_idx, block) in blocks.iter().enumerate() {
            let mut total = 0usize;
            for degree in 1..=self.max_degree() {
                for &idx in &block.members[degree] {
                    if owner[degree].insert(idx, b_idx).is_some() {
                        return Err(Error::Invariant(format!(
                            "basis element (degree {degree}, index {idx}) lies in two blocks"
                        )));
                    }
                }
                if degree > block.extremal_degree {
                    if !block.members[degree].is_empty() {
                        return Err(Error::Invariant(
                            "block has members above its extremal element".into(),
                        ));
                    }
                    continue;
                }
                let r = block.extremal_degree - degree;
                let expected = binomial(block.kappa, r);
                if block.members[degree].len() != expected {
                    return Err(Error::Invariant(format!(
                        "block at (degree {}, index {}) with kappa {} has {} elements {} \
                         steps down; expected C({}, {}) = {expected}",
                        block.extremal_degree,
                        block.extremal_index,
                        block.kappa,
                        block.members[degree].len(),
                        r,
                        block.kappa,
                        r
                    )));
                }
                total += block.members[degree].len();
            }
            if total != 1usize << block.kappa {
                return Err(Error::Invariant(format!(
                    "block size {total} is not 2^{}",
                    block.kappa
                )));
            }
        }
        for degree in 1..=self.max_degree() {
            if owner[degree].len() != self.dimension(degree) {
                return Err(Error::Invariant(format!(
                    "blocks cover {} of {} elements in degree {degree}",
                    owner[degree].len(),
                    self.dimension(degree)
                )));
            }
        }
        // boundary restricted to blocks
        for from in 2..=self.max_degree() {
            let mat = self.boundary(from);
            for (col, entries) in mat.cols.iter().enumerate() {
                let col_block = owner[from][&col];
                for &(row, _) in entries {
                    if owner[from - 1][&(row as usize)] != col_block {
                        return Err(Error::Invariant(format!(
                            "boundary entry leaves its block (degree {from}, column {col})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Plain sparse triplet dump: `degree row col entry` per line, where
    /// `degree` is the source degree of the matrix.
    pub fn dump_boundaries(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for from in 2..=self.max_degree() {
            let mat = self.boundary(from);
            for (col, entries) in mat.cols.iter().enumerate() {
                for &(row, coeff) in entries {
                    writeln!(out, "{from} {row} {col} {coeff}")?;
                }
            }
        }
        Ok(())
    }
}

/// One subcomplex of the extremal decomposition.
#[derive(Debug, Clone)]
pub struct ExtremalBlock {
    pub extremal_degree: usize,
    pub extremal_index: usize,
    /// Number of cups of the extremal element's z tree.
    pub kappa: usize,
    /// members[d] = basis indices of the block within homological degree d.
    pub members: Vec<Vec<usize>>,
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact rank over the rationals. Splits the support graph into connected
/// components, then runs fraction-free elimination on each dense block.
pub fn matrix_rank(mat: &SparseMatrix) -> usize {
    if mat.nrows == 0 || mat.ncols == 0 {
        return 0;
    }
    // union-find over columns (0..ncols) and rows (ncols..ncols+nrows)
    let mut parent: Vec<usize> = (0..mat.ncols + mat.nrows).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (col, entries) in mat.cols.iter().enumerate() {
        for &(row, _) in entries {
            let a = find(&mut parent, col);
            let b = find(&mut parent, mat.ncols + row as usize);
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: HashMap<usize, (Vec<usize>, Vec<u32>)> = HashMap::new();
    for (col, entries) in mat.cols.iter().enumerate() {
        if entries.is_empty() {
            continue;
        }
        let root = find(&mut parent, col);
        let group = groups.entry(root).or_default();
        group.0.push(col);
        for &(row, _) in entries {
            if !group.1.contains(&row) {
                group.1.push(row);
            }
        }
    }
    let mut rank = 0usize;
    for (_, (cols, rows)) in groups {
        rank += dense_rank(mat, &cols, &rows);
    }
    rank
}

// Fraction-free (Bareiss) elimination on the dense submatrix given by the
// listed columns and rows.
fn dense_rank(mat: &SparseMatrix, cols: &[usize], rows: &[u32]) -> usize {
    let mut row_pos: HashMap<u32, usize> = HashMap::new();
    for (i, &r) in rows.iter().enumerate() {
        row_pos.insert(r, i);
    }
    let nr = rows.len();
    let nc = cols.len();
    let mut a = vec![vec![BigInt::zero(); nc]; nr];
    for (j, &col) in cols.iter().enumerate() {
        for &(row, coeff) in &mat.cols[col] {
            a[row_pos[&row]][j] = BigInt::from(coeff);
        }
    }
    let mut rank = 0usize;
    let mut prev = BigInt::from(1);
    for col in 0..nc {
        // find a pivot, preferring magnitude 1
        let pivot_row = (rank..nr)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].magnitude().clone());
        let Some(p) = pivot_row else { continue };
        a.swap(rank, p);
        for r in rank + 1..nr {
            for c2 in col + 1..nc {
                let val = (&a[rank][col] * &a[r][c2] - &a[r][col] * &a[rank][c2]) / &prev;
                a[r][c2] = val;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}
