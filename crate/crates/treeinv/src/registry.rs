//! Built-in registry of worked examples: binary pattern sets (a)-(i) and the
//! k-ary examples ka/ka4/kb/kc, with their expected count prefixes and, where
//! available, the closed rational form of the dual series.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::patterns::PatternSet;
use crate::series::RationalForm;
use crate::trees::{Alphabet, Assoc, Pattern};

/// A named example: the stored pattern list is the Z side (the excluded
/// patterns); X is its complement.
#[derive(Debug, Clone)]
pub struct ExampleEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub arity: usize,
    pub alphabet: Alphabet,
    z_patterns: Vec<Pattern>,
    /// Expected prefix of (#X_n) starting at n = 0.
    pub expected_x_prefix: Vec<BigUint>,
    /// Expected prefix of (#Z_n) starting at n = 0.
    pub expected_z_prefix: Vec<BigUint>,
    /// Closed form of the alternating Z series, when known.
    pub g_closed_form: Option<RationalForm>,
}

impl ExampleEntry {
    /// The avoided-complement side X, the set whose classes the primary
    /// sequence counts.
    pub fn x_set(&self) -> PatternSet {
        self.z_set().complement()
    }

    pub fn z_set(&self) -> PatternSet {
        PatternSet::new(self.alphabet.clone(), self.arity, self.z_patterns.clone())
            .expect("registry patterns are well-formed")
    }
}

fn binary_entry(
    key: &'static str,
    description: &'static str,
    tokens: &[&str],
    z: &[(Assoc, &str, &str)],
    x_prefix: &[u64],
    z_prefix: &[u64],
    g: Option<RationalForm>,
) -> ExampleEntry {
    let alphabet = Alphabet::new(tokens.to_vec()).expect("distinct tokens");
    let z_patterns = z
        .iter()
        .map(|&(assoc, v1, v2)| {
            Pattern::binary(
                assoc,
                alphabet.index_of(v1).expect("known token"),
                alphabet.index_of(v2).expect("known token"),
            )
        })
        .collect();
    ExampleEntry {
        key,
        description,
        arity: 2,
        alphabet,
        z_patterns,
        expected_x_prefix: x_prefix.iter().map(|&v| BigUint::from(v)).collect(),
        expected_z_prefix: z_prefix.iter().map(|&v| BigUint::from(v)).collect(),
        g_closed_form: g,
    }
}

fn kary_entry(
    key: &'static str,
    description: &'static str,
    arity: usize,
    z_positions: &[usize],
    x_prefix: &[u64],
    z_prefix: &[u64],
) -> ExampleEntry {
    let alphabet = Alphabet::numeric(1);
    let one = alphabet.index_of("1").unwrap();
    let z_patterns = z_positions
        .iter()
        .map(|&pos| Pattern {
            pos,
            parent: one,
            child: one,
        })
        .collect();
    ExampleEntry {
        key,
        description,
        arity,
        alphabet,
        z_patterns,
        expected_x_prefix: x_prefix.iter().map(|&v| BigUint::from(v)).collect(),
        expected_z_prefix: z_prefix.iter().map(|&v| BigUint::from(v)).collect(),
        g_closed_form: None,
    }
}

/// All registry entries in key order.
pub fn all() -> Vec<ExampleEntry> {
    use Assoc::{L, R};
    let mut entries = vec![
        binary_entry(
            "a",
            "all-ones sequence, self-dual",
            &["1"],
            &[(R, "1", "1")],
            &[1, 1, 1, 1, 1, 1, 1],
            &[1, 1, 1, 1, 1, 1, 1],
            Some(RationalForm::new(vec![0, -1], vec![1, 1])),
        ),
        binary_entry(
            "b",
            "Catalan numbers, dual to 1,1,0,0,...",
            &["1"],
            &[],
            &[1, 1, 2, 5, 14, 42, 132],
            &[1, 1, 0, 0, 0, 0, 0],
            Some(RationalForm::new(vec![0, -1, 1], vec![1])),
        ),
        binary_entry(
            "c",
            "doubled super-Catalan (Schroeder) numbers",
            &["1", "2"],
            &[(L, "1", "1"), (R, "2", "2")],
            &[1, 2, 6, 22, 90],
            &[1, 2, 2, 2, 2, 2, 2],
            Some(RationalForm::new(vec![0, -1, 1], vec![1, 1])),
        ),
        binary_entry(
            "d",
            "a finite dual: 1,2,2,1,0,...",
            &["1", "2"],
            &[(L, "2", "1"), (R, "1", "2")],
            &[1, 2, 6, 21, 80],
            &[1, 2, 2, 1, 0, 0, 0],
            Some(RationalForm::new(vec![0, -1, 2, -2, 1], vec![1])),
        ),
        binary_entry(
            "e",
            "dual eventually constant 1",
            &["1", "2"],
            &[(L, "1", "1")],
            &[1, 2, 7, 31, 154],
            &[1, 2, 1, 1, 1, 1, 1],
            Some(RationalForm::new(vec![0, -1, 1, 1], vec![1, 1])),
        ),
        binary_entry(
            "f",
            "three indices, one excluded pattern",
            &["1", "2", "3"],
            &[(L, "1", "1")],
            &[1, 3, 17, 121, 965],
            &[1, 3, 1, 1, 1, 1, 1],
            Some(RationalForm::new(vec![0, -1, 2, 2], vec![1, 1])),
        ),
        binary_entry(
            "g",
            "dual n+2",
            &["1", "2", "3"],
            &[
                (L, "1", "1"),
                (L, "1", "2"),
                (R, "2", "2"),
                (R, "3", "3"),
            ],
            &[1, 3, 14, 80, 510],
            &[1, 3, 4, 5, 6, 7, 8],
            Some(RationalForm::new(vec![0, -1, 1, 1], vec![1, 2, 1])),
        ),
        binary_entry(
            "h",
            "dual squares (n+1)^2",
            &["NW", "NE", "SE", "SW"],
            &[
                (R, "NW", "NW"),
                (R, "NE", "NW"),
                (L, "NE", "NE"),
                (R, "SW", "NW"),
                (R, "SE", "NW"),
                (L, "SE", "NE"),
                (R, "SW", "SW"),
                (L, "SE", "SW"),
                (L, "SE", "SE"),
            ],
            &[1, 4, 23, 156, 1162],
            &[1, 4, 9, 16, 25, 36, 49],
            Some(RationalForm::new(vec![0, -1, 1], vec![1, 3, 3, 1])),
        ),
        binary_entry(
            "i",
            "nine indices, 49 excluded patterns",
            &["NW", "N", "NE", "W", "C", "E", "SW", "S", "SE"],
            &EXAMPLE_I_Z,
            &[1, 9, 113],
            &[1, 9, 49],
            None,
        ),
        kary_entry(
            "ka",
            "ternary trees, full X",
            3,
            &[],
            &[1, 1, 3, 12, 55, 273, 1428],
            &[1, 1, 0, 0, 0, 0, 0],
        ),
        kary_entry(
            "ka4",
            "quaternary trees, full X",
            4,
            &[],
            &[1, 1, 4, 22, 140, 969],
            &[1, 1, 0, 0, 0, 0],
        ),
        kary_entry(
            "kb",
            "ternary trees, one excluded pattern",
            3,
            &[3],
            &[1, 1, 2, 5, 14, 42],
            &[1, 1, 1, 1, 1, 1],
        ),
        kary_entry(
            "kc",
            "quaternary trees, self-inverse Catalan",
            4,
            &[2, 3],
            &[1, 1, 2, 5, 14, 42, 132],
            &[1, 1, 2, 5, 14, 42, 132],
        ),
    ];
    entries.sort_by_key(|e| e.key);
    entries
}

pub fn get(key: &str) -> Result<ExampleEntry> {
    all()
        .into_iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::UnknownExample(key.to_string()))
}

pub fn keys() -> Vec<&'static str> {
    all().iter().map(|e| e.key).collect()
}

// The 49 excluded patterns of example (i), row by row of the 7x7 table,
// over the nine compass tokens (C for the center).
const EXAMPLE_I_Z: [(Assoc, &str, &str); 49] = {
    use Assoc::{L, R};
    [
        // row 1
        (R, "NW", "NW"),
        (R, "NE", "NW"),
        (L, "NE", "NE"),
        (R, "NE", "N"),
        (R, "NW", "N"),
        (R, "N", "NW"),
        (R, "N", "N"),
        // row 2
        (R, "SW", "NW"),
        (R, "SE", "NW"),
        (L, "SE", "NE"),
        (R, "SE", "N"),
        (R, "SW", "N"),
        (L, "S", "NW"),
        (R, "S", "N"),
        // row 3
        (R, "SW", "SW"),
        (L, "SE", "SW"),
        (L, "SE", "SE"),
        (R, "SE", "S"),
        (L, "SW", "S"),
        (L, "S", "SW"),
        (L, "S", "S"),
        // row 4
        (R, "SW", "W"),
        (R, "SE", "W"),
        (L, "SE", "E"),
        (R, "SE", "C"),
        (R, "SW", "C"),
        (L, "S", "W"),
        (R, "S", "C"),
        // row 5
        (R, "NW", "W"),
        (R, "NE", "W"),
        (L, "NE", "E"),
        (R, "NE", "C"),
        (R, "NW", "C"),
        (L, "N", "W"),
        (R, "N", "C"),
        // row 6
        (R, "W", "NW"),
        (L, "E", "NW"),
        (L, "E", "NE"),
        (R, "E", "N"),
        (L, "W", "N"),
        (L, "C", "NW"),
        (L, "C", "N"),
        // row 7
        (R, "W", "W"),
        (R, "E", "W"),
        (L, "E", "E"),
        (R, "E", "C"),
        (R, "W", "C"),
        (L, "C", "W"),
        (R, "C", "C"),
    ]
};
