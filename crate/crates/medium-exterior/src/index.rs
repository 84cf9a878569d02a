/// The ordered bivector basis `O`, slot `k` holding `PAIRS[k]`.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// An element of `O` together with its 1-based slot `b(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BivectorIndex {
    pub pair: (usize, usize),
    pub slot: usize,
}

impl BivectorIndex {
    pub fn all() -> [BivectorIndex; 6] {
        std::array::from_fn(|k| BivectorIndex { pair: PAIRS[k], slot: k + 1 })
    }

    /// `slot` in 1..=6.
    pub fn from_slot(slot: usize) -> Option<Self> {
        (1..=6).contains(&slot).then(|| BivectorIndex { pair: PAIRS[slot - 1], slot })
    }

    /// Maps an index pair to its basis element and the orientation sign
    /// (`dx^i∧dx^j = sign · dx^I`). Returns `None` for `i == j`.
    pub fn from_pair(i: usize, j: usize) -> Option<(Self, i32)> {
        PAIRS.iter().enumerate().find_map(|(k, &(a, b))| {
            if (a, b) == (i, j) {
                Some((BivectorIndex { pair: (a, b), slot: k + 1 }, 1))
            } else if (b, a) == (i, j) {
                Some((BivectorIndex { pair: (a, b), slot: k + 1 }, -1))
            } else {
                None
            }
        })
    }

    /// 0-based position in `O`.
    pub fn position(&self) -> usize {
        self.slot - 1
    }
}

const fn build_epsilon() -> [[[[i8; 4]; 4]; 4]; 4] {
    let mut t = [[[[0i8; 4]; 4]; 4]; 4];
    let mut i = 0;
    while i < 4 {
        let mut j = 0;
        while j < 4 {
            let mut k = 0;
            while k < 4 {
                let mut l = 0;
                while l < 4 {
                    let p = [i, j, k, l];
                    let mut distinct = true;
                    let mut inversions = 0;
                    let mut a = 0;
                    while a < 4 {
                        let mut b = a + 1;
                        while b < 4 {
                            if p[a] == p[b] {
                                distinct = false;
                            }
                            if p[a] > p[b] {
                                inversions += 1;
                            }
                            b += 1;
                        }
                        a += 1;
                    }
                    if distinct {
                        t[i][j][k][l] = if inversions % 2 == 0 { 1 } else { -1 };
                    }
                    l += 1;
                }
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    t
}

/// Levi-Civita symbol with `ε_{0123} = +1`, as a 4⁴ lookup table.
pub const EPSILON: [[[[i8; 4]; 4]; 4]; 4] = build_epsilon();

pub fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> i32 {
    EPSILON[i][j][k][l] as i32
}
