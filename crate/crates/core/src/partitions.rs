//! Partitions and their Young diagrams.
//!
//! Boxes are addressed with zero-based `(row, col)` coordinates; the content
//! of a box is `col - row`, which is the same as `j - i` in one-based
//! matrix coordinates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::exact::{binomial2, factorial};
use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are stripped on construction, so `(2,1,0,0)` and `(2,1)`
/// are the same value. The empty partition (of 0) is allowed; it shows up as
/// the bottom of domino chains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing and positive, but part {} is {} and part {} is {}",
                i + 1,
                parts[i],
                i + 2,
                parts[i + 1]
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The staircase `(k, k-1, ..., 1)`.
    pub fn staircase(k: usize) -> Self {
        Self {
            parts: (1..=k).rev().collect(),
        }
    }

    /// The hook `(n-1, 1)`. Degenerates to `(1)` and `()` for `n < 2`.
    pub fn hook(n: usize) -> Self {
        match n {
            0 => Self::empty(),
            1 => Self { parts: vec![1] },
            _ => Self {
                parts: vec![n - 1, 1],
            },
        }
    }

    pub fn single_row(n: usize) -> Self {
        Self::new(vec![n]).expect("single row")
    }

    pub fn single_column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of (nonzero) rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length, zero beyond the last row.
    pub fn part(&self, row: usize) -> usize {
        self.parts.get(row).copied().unwrap_or(0)
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        col < self.part(row)
    }

    /// `true` when the diagram of `other` is a subset of this diagram.
    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(row, &len)| (0..len).map(move |col| (row, col)))
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|col| self.parts.iter().take_while(|&&len| len > col).count())
            .collect();
        Partition { parts }
    }

    /// Rows whose last box can be removed leaving a partition.
    pub fn removable_corners(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows())
            .filter(|&r| self.part(r) > self.part(r + 1))
            .map(|r| (r, self.part(r) - 1))
    }

    /// Partitions obtained by removing one domino, with the sign `+1` for a
    /// horizontal domino and `-1` for a vertical one.
    pub fn domino_removals(&self) -> Vec<(Partition, i32)> {
        let mut out = Vec::new();
        for r in 0..self.rows() {
            let len = self.part(r);
            // horizontal: last two boxes of row r
            if len >= 2 && len - 2 >= self.part(r + 1) {
                let mut parts = self.parts.clone();
                parts[r] -= 2;
                out.push((Partition::new(parts).expect("valid removal"), 1));
            }
            // vertical: last box of rows r and r + 1, which must share a column
            if self.part(r + 1) == len && len > self.part(r + 2) {
                let mut parts = self.parts.clone();
                parts[r] -= 1;
                parts[r + 1] -= 1;
                out.push((Partition::new(parts).expect("valid removal"), -1));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

/// Shape syntax: a comma list `4,3,2,1`, `stair:k` for `(k, k-1, ..., 1)`,
/// or `hook:N` for `(N-1, 1)`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty shape".into(),
            });
        }
        let offset = text.len() - text.trim_start().len();

        if let Some((kind, arg)) = trimmed.split_once(':') {
            let arg_pos = offset + kind.len() + 1;
            let value: usize = arg.trim().parse().map_err(|_| Error::Parse {
                position: arg_pos,
                message: format!("expected a positive integer after '{kind}:', found '{arg}'"),
            })?;
            return match kind.trim() {
                "stair" if value >= 1 => Ok(Partition::staircase(value)),
                "hook" if value >= 2 => Ok(Partition::hook(value)),
                "stair" | "hook" => Err(Error::Parse {
                    position: arg_pos,
                    message: format!(
                        "{kind}:{value} is too small (need at least {})",
                        if kind == "stair" { 1 } else { 2 }
                    ),
                }),
                other => Err(Error::Parse {
                    position: offset,
                    message: format!("unknown shape shorthand '{other}' (expected stair or hook)"),
                }),
            };
        }

        let mut parts = Vec::new();
        let mut position = offset;
        for token in trimmed.split(',') {
            let value: usize = token.trim().parse().map_err(|_| Error::Parse {
                position,
                message: format!("expected a positive integer, found '{token}'"),
            })?;
            if value == 0 {
                return Err(Error::Parse {
                    position,
                    message: "parts must be positive".into(),
                });
            }
            if let Some(&prev) = parts.last() {
                if value > prev {
                    return Err(Error::Parse {
                        position,
                        message: format!("part {value} exceeds the previous part {prev}; parts must be weakly decreasing"),
                    });
                }
            }
            parts.push(value);
            position += token.len() + 1;
        }
        Partition::new(parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookData {
    /// `hooks[row][col]` for every box of the shape.
    pub hooks: Vec<Vec<usize>>,
    /// `f^λ = N! / Π hooks`.
    pub dimension: BigInt,
}

impl HookData {
    /// The dimension as a machine integer, if it fits.
    pub fn dimension_usize(&self) -> Option<usize> {
        self.dimension.to_usize()
    }
}

pub fn hook_data(p: &Partition) -> HookData {
    let conj = p.conjugate();
    let hooks: Vec<Vec<usize>> = (0..p.rows())
        .map(|r| {
            (0..p.part(r))
                .map(|c| (p.part(r) - c - 1) + (conj.part(c) - r - 1) + 1)
                .collect()
        })
        .collect();
    let product = hooks
        .iter()
        .flatten()
        .fold(BigInt::from(1), |acc, &h| acc * h);
    let n_fact = factorial(p.size() as u64);
    debug_assert!((&n_fact % &product).is_zero());
    HookData {
        hooks,
        dimension: n_fact / product,
    }
}

/// `f^λ = N! Π_{i<j}(λ_i - λ_j - i + j) / Π_i (λ_i + k - i)!`, with `k` the
/// number of stored (nonzero) rows and empty products equal to 1.
pub fn dimension_determinant(p: &Partition) -> BigInt {
    let k = p.rows() as i64;
    let lam: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
    let mut numer = factorial(p.size() as u64);
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            numer *= lam[i] - lam[j] - i as i64 + j as i64;
        }
    }
    // rows are 1-based in the formula: λ_i + k - i with i = idx + 1
    let denom = lam
        .iter()
        .enumerate()
        .fold(BigInt::from(1), |acc, (idx, &l)| {
            acc * factorial((l + k - idx as i64 - 1) as u64)
        });
    debug_assert!((&numer % &denom).is_zero());
    numer / denom
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeStatistics {
    pub size: usize,
    /// `Σ (col - row)` over boxes.
    pub content_sum: i64,
    /// `Σ (col - row)^2` over boxes.
    pub content_square_sum: i64,
    /// `C(N, 2)`.
    pub pair_count: i64,
}

impl ShapeStatistics {
    /// `content_sum / C(N, 2)`, the character ratio on a transposition.
    pub fn theta_ratio(&self) -> Result<BigRational> {
        if self.pair_count == 0 {
            return Err(Error::DegenerateShape {
                size: self.size,
                needed: 2,
            });
        }
        Ok(BigRational::new(
            BigInt::from(self.content_sum),
            BigInt::from(self.pair_count),
        ))
    }
}

pub fn shape_statistics(p: &Partition) -> ShapeStatistics {
    let (mut sum, mut sq) = (0i64, 0i64);
    for (r, c) in p.boxes() {
        let content = c as i64 - r as i64;
        sum += content;
        sq += content * content;
    }
    let binomial_form: i64 = p.parts().iter().map(|&l| binomial2(l as i64)).sum::<i64>()
        - p.conjugate()
            .parts()
            .iter()
            .map(|&l| binomial2(l as i64))
            .sum::<i64>();
    assert_eq!(sum, binomial_form, "content sum forms disagree for {p}");
    ShapeStatistics {
        size: p.size(),
        content_sum: sum,
        content_square_sum: sq,
        pair_count: binomial2(p.size() as i64),
    }
}

/// All partitions of `n` in reverse lexicographic order: `(n)` first,
/// `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
        return out;
    }
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
