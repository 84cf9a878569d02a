use std::fmt;

use serde::{Deserialize, Serialize};

/// Block sizes `[m₁ … m_r k₁k̄₁ … k_s k̄_s]`, each list nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegreType {
    pub real: Vec<usize>,
    pub complex: Vec<usize>,
}

/// The 23 types in dimension 6 together with their printed labels.
const TYPES: [(&[usize], &[usize], &str); 23] = [
    (&[], &[1, 1, 1], "[11̄ 11̄ 11̄]"),
    (&[], &[2, 1], "[22̄ 11̄]"),
    (&[], &[3], "[33̄]"),
    (&[1, 1], &[1, 1], "[11 11̄ 11̄]"),
    (&[1, 1], &[2], "[11 22̄]"),
    (&[1, 1, 1, 1], &[1], "[11 11 11̄]"),
    (&[1, 1, 1, 1, 1, 1], &[], "[11 11 11]"),
    (&[6], &[], "[6]"),
    (&[4, 2], &[], "[42]"),
    (&[4], &[1], "[4 11̄]"),
    (&[4, 1, 1], &[], "[411]"),
    (&[2], &[2], "[2 22̄]"),
    (&[2, 2, 2], &[], "[222]"),
    (&[2, 2], &[1], "[22 11̄]"),
    (&[2, 2, 1, 1], &[], "[22 11]"),
    (&[2], &[1, 1], "[2 11̄ 11̄]"),
    (&[2, 1, 1], &[1], "[211 11̄]"),
    (&[2, 1, 1, 1, 1], &[], "[21111]"),
    (&[5, 1], &[], "[51]"),
    (&[3, 3], &[], "[33]"),
    (&[3, 2, 1], &[], "[321]"),
    (&[3, 1], &[1], "[31 11̄]"),
    (&[3, 1, 1, 1], &[], "[31 11]"),
];

impl SegreType {
    /// Sorts both lists into nonincreasing order.
    pub fn new(mut real: Vec<usize>, mut complex: Vec<usize>) -> Self {
        real.sort_unstable_by(|a, b| b.cmp(a));
        complex.sort_unstable_by(|a, b| b.cmp(a));
        Self { real, complex }
    }

    pub fn all() -> Vec<SegreType> {
        TYPES.iter().map(|(r, c, _)| SegreType { real: r.to_vec(), complex: c.to_vec() }).collect()
    }

    /// Position in the list of 23 (0-based), if the type occurs in dimension 6.
    pub fn index(&self) -> Option<usize> {
        TYPES.iter().position(|(r, c, _)| *r == self.real.as_slice() && *c == self.complex.as_slice())
    }

    pub fn dim(&self) -> usize {
        self.real.iter().sum::<usize>() + 2 * self.complex.iter().sum::<usize>()
    }

    /// The printed label, or a generic rendering for types outside the list.
    pub fn label(&self) -> String {
        match self.index() {
            Some(i) => TYPES[i].2.to_string(),
            None => {
                let r: String = self.real.iter().map(|m| m.to_string()).collect();
                let c: Vec<String> = self.complex.iter().map(|k| format!("{k}{k}̄")).collect();
                format!("[{}]", [r, c.join(" ")].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" "))
            }
        }
    }
}

impl fmt::Display for SegreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
