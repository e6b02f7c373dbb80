//! Planar rooted trees with fixed vertex arity, vertex labels, grafting,
//! vertex numbering, cup detection and local-pattern extraction.
//!
//! Degree means the number of internal vertices. A degree-n k-ary shape has
//! (k-1)n + 1 leaves. Vertices are numbered 1..=n in the order they are first
//! passed in a left-to-right planar sweep: the subtree under child 1, then the
//! vertex itself, then the subtrees under children 2..k. For binary trees this
//! is the classical numbering where leaves are 0..=n left to right and vertex
//! i sits between leaves i-1 and i.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

/// A finite ordered set of label tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(tokens: Vec<S>) -> Result<Self> {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        for i in 0..tokens.len() {
            for j in i + 1..tokens.len() {
                if tokens[i] == tokens[j] {
                    return Err(Error::Config(format!("duplicate token '{}'", tokens[i])));
                }
            }
        }
        Ok(Alphabet { tokens })
    }

    /// Alphabet {1, 2, ..., m}.
    pub fn numeric(m: usize) -> Self {
        Alphabet {
            tokens: (1..=m).map(|i| i.to_string()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn token(&self, label: Label) -> &str {
        &self.tokens[label.0]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn index_of(&self, token: &str) -> Option<Label> {
        self.tokens.iter().position(|t| t == token).map(Label)
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> {
        (0..self.tokens.len()).map(Label)
    }
}

/// Index into an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeNode {
    Leaf,
    Vertex(Vec<ShapeNode>),
}

impl ShapeNode {
    fn degree(&self) -> usize {
        match self {
            ShapeNode::Leaf => 0,
            ShapeNode::Vertex(children) => {
                1 + children.iter().map(|c| c.degree()).sum::<usize>()
            }
        }
    }

    fn check_arity(&self, k: usize) -> bool {
        match self {
            ShapeNode::Leaf => true,
            ShapeNode::Vertex(children) => {
                children.len() == k && children.iter().all(|c| c.check_arity(k))
            }
        }
    }
}

/// A planar rooted tree whose internal vertices all have exactly `arity`
/// ordered children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeShape {
    arity: usize,
    degree: usize,
    root: ShapeNode,
}

impl TreeShape {
    pub fn new(arity: usize, root: ShapeNode) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Config(format!("arity must be >= 2, got {arity}")));
        }
        if !root.check_arity(arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: 0,
            });
        }
        let degree = root.degree();
        Ok(TreeShape { arity, degree, root })
    }

    pub fn leaf(arity: usize) -> Self {
        TreeShape {
            arity,
            degree: 0,
            root: ShapeNode::Leaf,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn root(&self) -> &ShapeNode {
        &self.root
    }

    pub fn leaf_count(&self) -> usize {
        (self.arity - 1) * self.degree + 1
    }

    pub fn is_leaf(&self) -> bool {
        self.degree == 0
    }

    /// Internal edges as `(parent_no, child_no, pos)` with `pos` in 1..=k,
    /// one per pair of adjacent vertices.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut edges = Vec::new();
        let mut counter = 0usize;
        Self::walk_edges(&self.root, &mut counter, &mut edges);
        edges
    }

    // Returns the vertex number of the subtree root, or None for a leaf.
    fn walk_edges(
        node: &ShapeNode,
        counter: &mut usize,
        edges: &mut Vec<(usize, usize, usize)>,
    ) -> Option<usize> {
        match node {
            ShapeNode::Leaf => None,
            ShapeNode::Vertex(children) => {
                let first = Self::walk_edges(&children[0], counter, edges);
                *counter += 1;
                let me = *counter;
                if let Some(c) = first {
                    edges.push((me, c, 1));
                }
                for (idx, child) in children.iter().enumerate().skip(1) {
                    if let Some(c) = Self::walk_edges(child, counter, edges) {
                        edges.push((me, c, idx + 1));
                    }
                }
                Some(me)
            }
        }
    }

    /// Vertex numbers whose children are all leaves, ascending.
    pub fn cups(&self) -> Vec<usize> {
        let mut cups = Vec::new();
        let mut counter = 0usize;
        Self::walk_cups(&self.root, &mut counter, &mut cups);
        cups
    }

    fn walk_cups(node: &ShapeNode, counter: &mut usize, cups: &mut Vec<usize>) {
        if let ShapeNode::Vertex(children) = node {
            Self::walk_cups(&children[0], counter, cups);
            *counter += 1;
            if children.iter().all(|c| matches!(c, ShapeNode::Leaf)) {
                cups.push(*counter);
            }
            for child in &children[1..] {
                Self::walk_cups(child, counter, cups);
            }
        }
    }

    /// Balanced-parenthesis encoding: leaf is `|`, a vertex is its children
    /// wrapped in parentheses.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        Self::write_node(&self.root, &mut s);
        s
    }

    fn write_node(node: &ShapeNode, out: &mut String) {
        match node {
            ShapeNode::Leaf => out.push('|'),
            ShapeNode::Vertex(children) => {
                out.push('(');
                for c in children {
                    Self::write_node(c, out);
                }
                out.push(')');
            }
        }
    }

    pub fn decode(arity: usize, s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0usize;
        let node = Self::parse_node(&chars, &mut pos, arity)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!(
                "trailing input at offset {pos} in '{s}'"
            )));
        }
        TreeShape::new(arity, node)
    }

    fn parse_node(chars: &[char], pos: &mut usize, arity: usize) -> Result<ShapeNode> {
        match chars.get(*pos) {
            Some('|') => {
                *pos += 1;
                Ok(ShapeNode::Leaf)
            }
            Some('(') => {
                *pos += 1;
                let mut children = Vec::with_capacity(arity);
                while chars.get(*pos) != Some(&')') {
                    if *pos >= chars.len() {
                        return Err(Error::Parse("unbalanced parentheses".into()));
                    }
                    children.push(Self::parse_node(chars, pos, arity)?);
                }
                *pos += 1;
                if children.len() != arity {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        got: children.len(),
                    });
                }
                Ok(ShapeNode::Vertex(children))
            }
            other => Err(Error::Parse(format!(
                "unexpected character {other:?} at offset {pos}",
                pos = *pos
            ))),
        }
    }
}

/// All degree-n shapes of the given arity, in canonical order: recursively by
/// the composition of child degrees, leftmost degree ascending first.
pub fn enumerate_shapes(arity: usize, degree: usize) -> Vec<TreeShape> {
    enumerate_nodes(arity, degree)
        .into_iter()
        .map(|root| TreeShape {
            arity,
            degree,
            root,
        })
        .collect()
}

fn enumerate_nodes(arity: usize, degree: usize) -> Vec<ShapeNode> {
    if degree == 0 {
        return vec![ShapeNode::Leaf];
    }
    let mut out = Vec::new();
    for comp in compositions(degree - 1, arity) {
        let child_lists: Vec<Vec<ShapeNode>> =
            comp.iter().map(|&d| enumerate_nodes(arity, d)).collect();
        let mut stack = vec![Vec::with_capacity(arity)];
        // cartesian product preserving per-slot order
        for list in &child_lists {
            let mut next = Vec::new();
            for partial in &stack {
                for item in list {
                    let mut p = partial.clone();
                    p.push(item.clone());
                    next.push(p);
                }
            }
            stack = next;
        }
        for children in stack {
            out.push(ShapeNode::Vertex(children));
        }
    }
    out
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative
/// integers, lexicographically ascending.
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

/// Number of degree-n k-ary shapes: the Fuss-Catalan number
/// C(kn, n) / ((k-1)n + 1); the Catalan number for k = 2.
pub fn count_shapes(arity: usize, degree: usize) -> BigUint {
    let k = arity;
    let n = degree;
    // binomial(kn, n) by running product, then exact division
    let mut num = BigUint::one();
    for i in 0..n {
        num *= BigUint::from(k * n - i);
    }
    let mut den = BigUint::one();
    for i in 1..=n {
        den *= BigUint::from(i);
    }
    (num / den) / BigUint::from((k - 1) * n + 1)
}

/// A shape together with one label per vertex, indexed by vertex number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelledTree {
    shape: TreeShape,
    labels: Vec<Label>,
}

impl LabelledTree {
    pub fn new(shape: TreeShape, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != shape.degree() {
            return Err(Error::Invariant(format!(
                "label count {} does not match degree {}",
                labels.len(),
                shape.degree()
            )));
        }
        Ok(LabelledTree { shape, labels })
    }

    pub fn leaf(arity: usize) -> Self {
        LabelledTree {
            shape: TreeShape::leaf(arity),
            labels: Vec::new(),
        }
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    /// Label of vertex `i` (1-based vertex number).
    pub fn label(&self, vertex: usize) -> Label {
        self.labels[vertex - 1]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn degree(&self) -> usize {
        self.shape.degree()
    }

    pub fn arity(&self) -> usize {
        self.shape.arity()
    }

    pub fn is_leaf(&self) -> bool {
        self.shape.is_leaf()
    }

    pub fn cups(&self) -> Vec<usize> {
        self.shape.cups()
    }

    /// One pattern per pair of adjacent vertices; empty for degree <= 1.
    pub fn local_patterns(&self) -> Vec<Pattern> {
        self.shape
            .edges()
            .iter()
            .map(|&(parent, child, pos)| Pattern {
                pos,
                parent: self.label(parent),
                child: self.label(child),
            })
            .collect()
    }

    /// Shape encoding plus comma-separated label tokens, e.g. `(|(||))[1,2]`.
    pub fn encode(&self, alphabet: &Alphabet) -> String {
        let labels: Vec<&str> = self.labels.iter().map(|&l| alphabet.token(l)).collect();
        format!("{}[{}]", self.shape.encode(), labels.join(","))
    }

    pub fn decode(arity: usize, alphabet: &Alphabet, s: &str) -> Result<Self> {
        let open = s
            .find('[')
            .ok_or_else(|| Error::Parse(format!("missing '[' in '{s}'")))?;
        if !s.ends_with(']') {
            return Err(Error::Parse(format!("missing closing ']' in '{s}'")));
        }
        let shape = TreeShape::decode(arity, &s[..open])?;
        let body = &s[open + 1..s.len() - 1];
        let labels = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|tok| {
                    alphabet
                        .index_of(tok)
                        .ok_or_else(|| Error::Parse(format!("unknown token '{tok}'")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        LabelledTree::new(shape, labels)
    }

    /// Split off the root: children subtrees in order plus the root label.
    /// Inverse of [`graft`]. Errors on the leaf.
    pub fn ungraft(&self) -> Result<(Vec<LabelledTree>, Label)> {
        let children = match self.shape.root() {
            ShapeNode::Leaf => {
                return Err(Error::Invariant("cannot ungraft a leaf".into()))
            }
            ShapeNode::Vertex(children) => children,
        };
        let mut out = Vec::with_capacity(self.arity());
        // labels are laid out as: child1 labels, root, child2 labels, ...
        let d1 = children[0].degree();
        let mut offset = 0usize;
        for (idx, child) in children.iter().enumerate() {
            let d = child.degree();
            let start = if idx == 0 { 0 } else { offset };
            let labels = self.labels[start..start + d].to_vec();
            out.push(LabelledTree {
                shape: TreeShape {
                    arity: self.arity(),
                    degree: d,
                    root: child.clone(),
                },
                labels,
            });
            offset = start + d;
            if idx == 0 {
                offset += 1; // skip the root label slot
            }
        }
        Ok((out, self.labels[d1]))
    }
}

/// Graft k trees under a new labelled root. The label sequence of the result
/// follows the left-to-right numbering of the glued tree.
pub fn graft(children: &[LabelledTree], root_label: Label) -> Result<LabelledTree> {
    let k = children
        .first()
        .map(|c| c.arity())
        .ok_or_else(|| Error::Invariant("graft requires at least one child".into()))?;
    if children.len() != k {
        return Err(Error::ArityMismatch {
            expected: k,
            got: children.len(),
        });
    }
    let degree = 1 + children.iter().map(|c| c.degree()).sum::<usize>();
    let root = ShapeNode::Vertex(children.iter().map(|c| c.shape.root.clone()).collect());
    let mut labels = Vec::with_capacity(degree);
    labels.extend_from_slice(children[0].labels());
    labels.push(root_label);
    for child in &children[1..] {
        labels.extend_from_slice(child.labels());
    }
    Ok(LabelledTree {
        shape: TreeShape {
            arity: k,
            degree,
            root,
        },
        labels,
    })
}

/// Binary shape of a degree-2 pattern: whether the internal child hangs
/// right (`L`, i.e. x v (y v z)) or left (`R`, i.e. (x v y) v z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Assoc {
    L,
    R,
}

/// A degree-2 labelled tree: an internal child at `pos` (1..=k) under a
/// labelled root. For binary trees, `pos = 2` is the classical `(L; v1, v2)`
/// association and `pos = 1` is `(R; v1, v2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    pub pos: usize,
    pub parent: Label,
    pub child: Label,
}

impl Pattern {
    /// Binary pattern from the L/R convention: `(L; v1, v2)` has the root
    /// labelled v1 with the composite hanging right; `(R; v1, v2)` has the
    /// root labelled v2 with the composite hanging left.
    pub fn binary(assoc: Assoc, v1: Label, v2: Label) -> Pattern {
        match assoc {
            Assoc::L => Pattern {
                pos: 2,
                parent: v1,
                child: v2,
            },
            Assoc::R => Pattern {
                pos: 1,
                parent: v2,
                child: v1,
            },
        }
    }

    /// The L/R view of a binary pattern, as `(assoc, v1, v2)`.
    pub fn as_binary(&self) -> Option<(Assoc, Label, Label)> {
        match self.pos {
            2 => Some((Assoc::L, self.parent, self.child)),
            1 => Some((Assoc::R, self.child, self.parent)),
            _ => None,
        }
    }

    /// The canonical degree-2 labelled tree of this pattern.
    pub fn to_tree(&self, arity: usize) -> LabelledTree {
        let mut children = vec![LabelledTree::leaf(arity); arity];
        children[self.pos - 1] = graft(&vec![LabelledTree::leaf(arity); arity], self.child)
            .expect("leaf graft");
        graft(&children, self.parent).expect("pattern graft")
    }

    /// Inverse of [`Pattern::to_tree`]; errors unless the tree has degree 2.
    pub fn from_tree(tree: &LabelledTree) -> Result<Pattern> {
        if tree.degree() != 2 {
            return Err(Error::Invariant(format!(
                "a pattern is a degree-2 tree, got degree {}",
                tree.degree()
            )));
        }
        let patterns = tree.local_patterns();
        Ok(patterns[0])
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        match self.as_binary() {
            Some((Assoc::L, v1, v2)) => {
                format!("(L;{},{})", alphabet.token(v1), alphabet.token(v2))
            }
            Some((Assoc::R, v1, v2)) => {
                format!("(R;{},{})", alphabet.token(v1), alphabet.token(v2))
            }
            None => format!(
                "(pos {};{},{})",
                self.pos,
                alphabet.token(self.parent),
                alphabet.token(self.child)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf() -> LabelledTree {
        LabelledTree::leaf(2)
    }

    #[test]
    fn enumerate_matches_known_small_counts() {
        assert_eq!(enumerate_shapes(2, 0).len(), 1);
        assert_eq!(enumerate_shapes(2, 1).len(), 1);
        assert_eq!(enumerate_shapes(2, 2).len(), 2);
        assert_eq!(enumerate_shapes(2, 3).len(), 5);
        assert_eq!(enumerate_shapes(3, 2).len(), 3);
    }

    #[test]
    fn count_shapes_closed_form() {
        assert_eq!(count_shapes(2, 0), BigUint::from(1u32));
        assert_eq!(count_shapes(2, 4), BigUint::from(14u32));
        assert_eq!(count_shapes(3, 3), BigUint::from(12u32));
    }

    #[test]
    fn enumeration_agrees_with_closed_form() {
        for k in 2..=4 {
            let max = if k == 2 { 10 } else { 7 };
            for n in 0..=max {
                assert_eq!(
                    BigUint::from(enumerate_shapes(k, n).len()),
                    count_shapes(k, n),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn graft_builds_combs_with_expected_patterns() {
        let a = Label(0);
        // right comb of degree 2: leaf v (leaf v leaf)
        let inner = graft(&[leaf(), leaf()], a).unwrap();
        let right_comb = graft(&[leaf(), inner.clone()], a).unwrap();
        assert_eq!(
            right_comb.local_patterns(),
            vec![Pattern::binary(Assoc::L, a, a)]
        );
        // left comb: (leaf v leaf) v leaf
        let u = Label(0);
        let v = Label(1);
        let left_inner = graft(&[leaf(), leaf()], u).unwrap();
        let left_comb = graft(&[left_inner, leaf()], v).unwrap();
        assert_eq!(
            left_comb.local_patterns(),
            vec![Pattern::binary(Assoc::R, u, v)]
        );
    }

    #[test]
    fn right_comb_degree3_patterns_and_cups() {
        let a = Label(0);
        let d1 = graft(&[leaf(), leaf()], a).unwrap();
        let d2 = graft(&[leaf(), d1], a).unwrap();
        let d3 = graft(&[leaf(), d2], a).unwrap();
        assert_eq!(
            d3.local_patterns(),
            vec![
                Pattern::binary(Assoc::L, a, a),
                Pattern::binary(Assoc::L, a, a)
            ]
        );
        // right comb: only the deepest vertex is a cup, numbered n
        assert_eq!(d3.cups(), vec![3]);
    }

    #[test]
    fn cup_example_from_double_graft() {
        // (| v |) v (| v |): cups at vertices 1 and 3
        let a = Label(0);
        let l = graft(&[leaf(), leaf()], a).unwrap();
        let r = graft(&[leaf(), leaf()], a).unwrap();
        let t = graft(&[l, r], a).unwrap();
        assert_eq!(t.cups(), vec![1, 3]);
        assert_eq!(LabelledTree::leaf(2).cups(), Vec::<usize>::new());
        let d1 = graft(&[leaf(), leaf()], a).unwrap();
        assert_eq!(d1.cups(), vec![1]);
    }

    #[test]
    fn ungraft_inverts_graft() {
        let a = Label(0);
        let b = Label(1);
        let l = graft(&[leaf(), leaf()], a).unwrap();
        let r = graft(&[graft(&[leaf(), leaf()], b).unwrap(), leaf()], a).unwrap();
        let t = graft(&[l.clone(), r.clone()], b).unwrap();
        let (children, root) = t.ungraft().unwrap();
        assert_eq!(children, vec![l, r]);
        assert_eq!(root, b);
    }

    #[test]
    fn encode_decode_round_trip() {
        let alphabet = Alphabet::numeric(2);
        let a = Label(0);
        let b = Label(1);
        let t = graft(
            &[
                graft(&[leaf(), leaf()], b).unwrap(),
                graft(&[leaf(), leaf()], a).unwrap(),
            ],
            a,
        )
        .unwrap();
        let s = t.encode(&alphabet);
        assert_eq!(s, "((||)(||))[2,1,1]");
        assert_eq!(LabelledTree::decode(2, &alphabet, &s).unwrap(), t);
        let shape = t.shape().encode();
        assert_eq!(TreeShape::decode(2, &shape).unwrap(), *t.shape());
    }

    #[test]
    fn decode_rejects_malformed() {
        assert!(TreeShape::decode(2, "(|").is_err());
        assert!(TreeShape::decode(2, "(|||)").is_err());
        assert!(TreeShape::decode(2, "(||)x").is_err());
        let alphabet = Alphabet::numeric(1);
        assert!(LabelledTree::decode(2, &alphabet, "(||)[7]").is_err());
    }

    #[test]
    fn pattern_tree_round_trip() {
        for pos in 1..=3 {
            for p in 0..2 {
                for c in 0..2 {
                    let pat = Pattern {
                        pos,
                        parent: Label(p),
                        child: Label(c),
                    };
                    let t = pat.to_tree(3);
                    assert_eq!(t.degree(), 2);
                    assert_eq!(Pattern::from_tree(&t).unwrap(), pat);
                }
            }
        }
    }

    #[test]
    fn leaf_counts_and_pattern_counts() {
        for n in 0..=6 {
            for shape in enumerate_shapes(2, n) {
                assert_eq!(shape.leaf_count(), n + 1);
                let t = LabelledTree::new(shape, vec![Label(0); n]).unwrap();
                if n >= 1 {
                    assert_eq!(t.local_patterns().len(), n - 1);
                }
            }
        }
    }

    #[test]
    fn vertex_numbering_separates_leaf_ranges() {
        // Vertex i of a binary tree sits between leaves i-1 and i: the leaves
        // under its first child all have numbers <= i-1, the rest >= i.
        fn walk(
            node: &ShapeNode,
            vertex_counter: &mut usize,
            leaf_counter: &mut usize,
        ) {
            if let ShapeNode::Vertex(children) = node {
                let left_start = *leaf_counter;
                walk(&children[0], vertex_counter, leaf_counter);
                *vertex_counter += 1;
                let i = *vertex_counter;
                let left_end = *leaf_counter; // leaves consumed so far
                assert!(left_start <= i - 1 || children[0].degree() == 0);
                assert_eq!(left_end, i, "left subtree of vertex {i} ends at leaf {i}-1");
                for c in &children[1..] {
                    walk(c, vertex_counter, leaf_counter);
                }
            } else {
                *leaf_counter += 1;
            }
        }
        for n in 0..=7 {
            for shape in enumerate_shapes(2, n) {
                let mut v = 0;
                let mut l = 0;
                walk(shape.root(), &mut v, &mut l);
            }
        }
    }
}
