//! Pattern sets X inside the degree-2 labelled trees, their complements,
//! and the avoidance classes X_n with both brute-force and DP counting.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::trees::{enumerate_shapes, Alphabet, Label, LabelledTree, Pattern, TreeShape};

/// Default degree bound for brute-force enumeration.
pub const DEFAULT_BRUTE_BOUND: usize = 8;

/// A subset of the degree-2 labelled trees over a fixed alphabet and arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    alphabet: Alphabet,
    arity: usize,
    members: BTreeSet<Pattern>,
    // membership table indexed by (pos-1)*m^2 + parent*m + child
    table: Vec<bool>,
}

impl PatternSet {
    pub fn new(alphabet: Alphabet, arity: usize, members: Vec<Pattern>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Config(format!("arity must be >= 2, got {arity}")));
        }
        let m = alphabet.size();
        let mut set = BTreeSet::new();
        for p in members {
            if p.pos < 1 || p.pos > arity {
                return Err(Error::Config(format!(
                    "pattern child position {} out of range 1..={arity}",
                    p.pos
                )));
            }
            if p.parent.0 >= m || p.child.0 >= m {
                return Err(Error::Config(format!(
                    "pattern label out of range for alphabet of size {m}"
                )));
            }
            set.insert(p);
        }
        let mut table = vec![false; arity * m * m];
        for p in &set {
            table[(p.pos - 1) * m * m + p.parent.0 * m + p.child.0] = true;
        }
        Ok(PatternSet {
            alphabet,
            arity,
            members: set,
            table,
        })
    }

    /// The full set: all k * m^2 degree-2 labelled trees.
    pub fn full(alphabet: Alphabet, arity: usize) -> Self {
        let mut members = Vec::new();
        for pos in 1..=arity {
            for parent in alphabet.labels() {
                for child in alphabet.labels() {
                    members.push(Pattern { pos, parent, child });
                }
            }
        }
        PatternSet::new(alphabet, arity, members).expect("full set is well-formed")
    }

    pub fn empty(alphabet: Alphabet, arity: usize) -> Self {
        PatternSet::new(alphabet, arity, Vec::new()).expect("empty set is well-formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> impl Iterator<Item = &Pattern> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, p: &Pattern) -> bool {
        let m = self.alphabet.size();
        self.table[(p.pos - 1) * m * m + p.parent.0 * m + p.child.0]
    }

    #[inline]
    fn contains_raw(&self, pos: usize, parent: usize, child: usize) -> bool {
        let m = self.alphabet.size();
        self.table[(pos - 1) * m * m + parent * m + child]
    }

    /// The complement inside the full degree-2 set; an involution.
    pub fn complement(&self) -> PatternSet {
        let mut members = Vec::new();
        for pos in 1..=self.arity {
            for parent in self.alphabet.labels() {
                for child in self.alphabet.labels() {
                    let p = Pattern { pos, parent, child };
                    if !self.contains(&p) {
                        members.push(p);
                    }
                }
            }
        }
        PatternSet::new(self.alphabet.clone(), self.arity, members)
            .expect("complement is well-formed")
    }

    /// True if all local patterns of `t` are members.
    pub fn admits(&self, t: &LabelledTree) -> bool {
        t.local_patterns().iter().all(|p| self.contains(p))
    }

    /// All degree-n labelled trees admitted by this set, canonical order.
    pub fn generate(&self, degree: usize) -> Result<AvoidanceClass> {
        self.generate_with_bound(degree, DEFAULT_BRUTE_BOUND)
    }

    pub fn generate_with_bound(&self, degree: usize, bound: usize) -> Result<AvoidanceClass> {
        if degree > bound {
            return Err(Error::SizeLimit {
                what: "brute-force degree",
                value: degree,
                bound,
            });
        }
        let mut trees = Vec::new();
        self.scan(degree, |shape, labels| {
            trees.push(
                LabelledTree::new(shape.clone(), labels.iter().map(|&l| Label(l)).collect())
                    .expect("label count matches degree"),
            );
        });
        let count = BigUint::from(trees.len());
        Ok(AvoidanceClass {
            degree,
            trees: Some(trees),
            count,
        })
    }

    /// Brute-force count without materializing trees.
    pub fn count_brute(&self, degree: usize) -> BigUint {
        let mut count = BigUint::zero();
        self.scan(degree, |_, _| count += 1u32);
        count
    }

    // Enumerate admitted (shape, labels) pairs in canonical order: shapes in
    // canonical shape order, labels in odometer order over the alphabet.
    fn scan<F: FnMut(&TreeShape, &[usize])>(&self, degree: usize, mut accept: F) {
        let m = self.alphabet.size();
        if degree == 0 {
            let leaf = TreeShape::leaf(self.arity);
            accept(&leaf, &[]);
            return;
        }
        if m == 0 {
            return;
        }
        for shape in enumerate_shapes(self.arity, degree) {
            let edges = shape.edges();
            let mut labels = vec![0usize; degree];
            'labelings: loop {
                if edges
                    .iter()
                    .all(|&(p, c, pos)| self.contains_raw(pos, labels[p - 1], labels[c - 1]))
                {
                    accept(&shape, &labels);
                }
                // odometer increment, most significant digit last
                let mut i = degree;
                loop {
                    if i == 0 {
                        break 'labelings;
                    }
                    i -= 1;
                    labels[i] += 1;
                    if labels[i] < m {
                        break;
                    }
                    labels[i] = 0;
                }
            }
        }
    }

    /// #X_n by dynamic programming over root labels; binary trees only.
    /// Falls back on the caller to use brute force for arity > 2.
    pub fn count_dp(&self, degree: usize) -> BigUint {
        assert_eq!(self.arity, 2, "count_dp supports binary trees only");
        let m = self.alphabet.size();
        if degree == 0 {
            return BigUint::one();
        }
        if m == 0 {
            return BigUint::zero();
        }
        // counts[p][r]: trees of degree p with root label r, p = 1..=degree
        let mut counts: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); m]; degree + 1];
        for r in 0..m {
            counts[1][r] = BigUint::one();
        }
        for p in 2..=degree {
            for r in 0..m {
                let mut total = BigUint::zero();
                for a in 0..p {
                    let b = p - 1 - a;
                    // left child of a root labelled r is the (R; u, r) pattern
                    let left: BigUint = if a == 0 {
                        BigUint::one()
                    } else {
                        (0..m)
                            .filter(|&u| self.contains_raw(1, r, u))
                            .map(|u| counts[a][u].clone())
                            .sum()
                    };
                    if left.is_zero() {
                        continue;
                    }
                    // right child is the (L; r, v) pattern
                    let right: BigUint = if b == 0 {
                        BigUint::one()
                    } else {
                        (0..m)
                            .filter(|&v| self.contains_raw(2, r, v))
                            .map(|v| counts[b][v].clone())
                            .sum()
                    };
                    total += left * right;
                }
                counts[p][r] = total;
            }
        }
        counts[degree].iter().sum()
    }

    /// #X_n, picking the DP for binary trees and brute force otherwise.
    pub fn count(&self, degree: usize) -> BigUint {
        if self.arity == 2 {
            self.count_dp(degree)
        } else {
            self.count_brute(degree)
        }
    }

    /// The coefficient sequence (a_0 ... a_N) with a_n = #X_n.
    pub fn coefficient_sequence(&self, max_degree: usize) -> Vec<BigUint> {
        (0..=max_degree).map(|n| self.count(n)).collect()
    }
}

/// The degree-n slice of an avoidance class, with trees listed when the
/// degree is within the brute-force bound.
#[derive(Debug, Clone)]
pub struct AvoidanceClass {
    pub degree: usize,
    pub trees: Option<Vec<LabelledTree>>,
    pub count: BigUint,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn set_from_binary(m: usize, pats: &[(crate::trees::Assoc, usize, usize)]) -> PatternSet {
        let alphabet = Alphabet::numeric(m);
        let members = pats
            .iter()
            .map(|&(a, v1, v2)| Pattern::binary(a, Label(v1), Label(v2)))
            .collect();
        PatternSet::new(alphabet, 2, members).unwrap()
    }

    pub(crate) fn random_set(m: usize, arity: usize, rng: &mut impl Rng) -> PatternSet {
        let alphabet = Alphabet::numeric(m);
        let mut members = Vec::new();
        for pos in 1..=arity {
            for parent in 0..m {
                for child in 0..m {
                    if rng.gen_bool(0.5) {
                        members.push(Pattern {
                            pos,
                            parent: Label(parent),
                            child: Label(child),
                        });
                    }
                }
            }
        }
        PatternSet::new(alphabet, arity, members).unwrap()
    }

    #[test]
    fn complement_basics() {
        use crate::trees::Assoc;
        let full = PatternSet::full(Alphabet::numeric(1), 2);
        assert_eq!(full.len(), 2);
        assert!(full.complement().is_empty());

        let x = set_from_binary(1, &[(Assoc::L, 0, 0)]);
        let z = x.complement();
        assert_eq!(z.len(), 1);
        assert!(z.contains(&Pattern::binary(Assoc::R, Label(0), Label(0))));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let x = random_set(2, 2, &mut rng);
            assert_eq!(x.complement().complement(), x);
            assert_eq!(x.len() + x.complement().len(), 2 * 4);
        }
    }

    #[test]
    fn generate_small_classes() {
        let full = PatternSet::full(Alphabet::numeric(1), 2);
        assert_eq!(full.generate(3).unwrap().count, BigUint::from(5u32));
        assert_eq!(full.generate(0).unwrap().count, BigUint::from(1u32));

        // example (d): counting the 2-element side gives 0 from degree 4 on
        use crate::trees::Assoc;
        let z = set_from_binary(2, &[(Assoc::L, 1, 0), (Assoc::R, 0, 1)]);
        assert_eq!(z.generate(4).unwrap().count, BigUint::zero());

        assert!(matches!(
            full.generate(9),
            Err(Error::SizeLimit { bound: 8, .. })
        ));
    }

    #[test]
    fn generated_trees_are_admitted() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let x = random_set(2, 2, &mut rng);
            for n in 0..=5 {
                let class = x.generate(n).unwrap();
                for t in class.trees.as_ref().unwrap() {
                    assert!(x.admits(t));
                    assert_eq!(t.degree(), n);
                }
            }
        }
    }

    #[test]
    fn dp_counts_known_sequences() {
        use crate::trees::Assoc;
        // example (c): Z = {(L;1,1), (R;2,2)}, count the complement X
        let z = set_from_binary(2, &[(Assoc::L, 0, 0), (Assoc::R, 1, 1)]);
        let x = z.complement();
        let seq: Vec<BigUint> = x.coefficient_sequence(4);
        let expect: Vec<BigUint> = [1u32, 2, 6, 22, 90].iter().map(|&v| v.into()).collect();
        assert_eq!(seq, expect);

        // example (h) X-sequence starts 1, 4, 23, 156
        let nw = 0;
        let ne = 1;
        let se = 2;
        let sw = 3;
        let z = set_from_binary(
            4,
            &[
                (Assoc::R, nw, nw),
                (Assoc::R, ne, nw),
                (Assoc::L, ne, ne),
                (Assoc::R, sw, nw),
                (Assoc::R, se, nw),
                (Assoc::L, se, ne),
                (Assoc::R, sw, sw),
                (Assoc::L, se, sw),
                (Assoc::L, se, se),
            ],
        );
        let x = z.complement();
        assert_eq!(x.count_dp(3), BigUint::from(156u32));
    }

    #[test]
    fn dp_matches_brute_force_oracle() {
        // exhaustive at m = 1: all 4 subsets of the 2 binary patterns
        let alphabet = Alphabet::numeric(1);
        let all: Vec<Pattern> = PatternSet::full(alphabet.clone(), 2)
            .members()
            .copied()
            .collect();
        assert_eq!(all.len(), 2);
        for mask in 0u32..4 {
            let members: Vec<Pattern> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect();
            let x = PatternSet::new(alphabet.clone(), 2, members).unwrap();
            for n in 0..=7 {
                assert_eq!(x.count_dp(n), x.count_brute(n), "mask={mask} n={n}");
            }
        }
        // randomized at m = 2 and 3
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [2usize, 3] {
            for _ in 0..20 {
                let x = random_set(m, 2, &mut rng);
                for n in 0..=5 {
                    assert_eq!(x.count_dp(n), x.count_brute(n), "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn degree2_partition_and_full_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let x = random_set(2, 2, &mut rng);
            let z = x.complement();
            // the partition identity holds at degree 2 only in general
            assert_eq!(
                x.count_dp(2) + z.count_dp(2),
                BigUint::from(2usize * 4)
            );
            // monotone bound: #X_n <= c_n m^n, equality iff full
            for n in 0..=6 {
                let cap = crate::trees::count_shapes(2, n) * BigUint::from(2u32).pow(n as u32);
                assert!(x.count_dp(n) <= cap);
            }
        }
        let full = PatternSet::full(Alphabet::numeric(2), 2);
        for n in 0..=6 {
            let cap = crate::trees::count_shapes(2, n) * BigUint::from(2u32).pow(n as u32);
            assert_eq!(full.count_dp(n), cap);
        }
    }

    #[test]
    fn empty_alphabet_degenerates() {
        let x = PatternSet::full(Alphabet::numeric(0), 2);
        assert_eq!(x.count_dp(0), BigUint::one());
        assert_eq!(x.count_dp(1), BigUint::zero());
        assert_eq!(x.count_dp(3), BigUint::zero());
        assert_eq!(x.generate(2).unwrap().count, BigUint::zero());
    }
}
