//! Combinatorial-interpretation search: given an integer sequence, invert
//! its alternating series and look for pattern sets whose dual counting
//! sequence reproduces the inverse's coefficients.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::series::alternating_series;
use crate::trees::{Alphabet, Label, Pattern};

/// A successful interpretation: the set X whose complement's counting
/// sequence matches the compositional inverse of the input's alternating
/// series. Hits are reported up to alphabet permutation.
#[derive(Debug, Clone)]
pub struct InterpretationHit {
    pub x: PatternSet,
}

/// Exhaustive search over binary pattern sets with at most `max_alphabet`
/// labels. The input is the ordinary count sequence a_0, a_1, ....
pub fn search_interpretation(
    counts: &[BigUint],
    max_alphabet: usize,
) -> Result<Vec<InterpretationHit>> {
    if counts.is_empty() {
        return Err(Error::Config("input sequence must be nonempty".into()));
    }
    let order = counts.len();
    let f = alternating_series(counts, order);
    let g = f.invert()?;
    // read the dual counts b_n off the inverse: coeff of t^{n+1} is
    // (-1)^{n+1} b_n
    let mut dual: Vec<BigInt> = Vec::with_capacity(order);
    for n in 0..order {
        let c = g.coeff(n + 1);
        dual.push(if (n + 1) % 2 == 1 { -c } else { c });
    }
    let max_n = order - 1;

    let mut hits = Vec::new();
    for m in 0..=max_alphabet {
        let alphabet = Alphabet::numeric(m);
        let universe: Vec<Pattern> = PatternSet::full(alphabet.clone(), 2)
            .members()
            .copied()
            .collect();
        let total = universe.len(); // 2 m^2
        if total >= usize::BITS as usize {
            return Err(Error::SizeLimit {
                what: "interpretation alphabet",
                value: m,
                bound: 5,
            });
        }
        // the dual sequence starts 1, m, #Z: prune on both cheap values
        if max_n >= 1 && dual[1] != BigInt::from(m) {
            continue;
        }
        let perms = permutations(m);
        'subsets: for mask in 0usize..(1 << total) {
            if max_n >= 2 && BigInt::from(mask.count_ones()) != dual[2] {
                continue;
            }
            // label-permutation pruning: keep only the minimal mask in its
            // orbit
            for perm in &perms {
                if permute_mask(mask, &universe, perm, m) < mask {
                    continue 'subsets;
                }
            }
            let members: Vec<Pattern> = universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect();
            let z = PatternSet::new(alphabet.clone(), 2, members)?;
            let matches = (0..=max_n)
                .all(|n| BigInt::from(z.count_dp(n)) == dual[n]);
            if matches {
                hits.push(InterpretationHit { x: z.complement() });
            }
        }
    }
    // a negative dual coefficient can never be a count; the loops above
    // simply find nothing in that case
    debug_assert!(hits.is_empty() || dual.iter().all(|b| !b.is_negative()));
    Ok(hits)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..m).collect();
    permute_rec(&mut items, 0, &mut out);
    out
}

fn permute_rec(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == items.len() {
        out.push(items.clone());
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute_rec(items, at + 1, out);
        items.swap(at, i);
    }
}

fn permute_mask(mask: usize, universe: &[Pattern], perm: &[usize], m: usize) -> usize {
    let index_of = |p: &Pattern| (p.pos - 1) * m * m + p.parent.0 * m + p.child.0;
    let mut out = 0usize;
    for (i, p) in universe.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let mapped = Pattern {
                pos: p.pos,
                parent: Label(perm[p.parent.0]),
                child: Label(perm[p.child.0]),
            };
            // the universe is laid out in table order, so the mapped index
            // is direct
            let j = universe
                .iter()
                .position(|q| index_of(q) == index_of(&mapped))
                .expect("permuted pattern stays in the universe");
            out |= 1 << j;
        }
    }
    out
}
