use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A partition: weakly decreasing sequence of positive integers (trailing
/// zeros are trimmed on construction).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts l(lambda).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part (0-based), 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// lambda'_j = #{i : lambda_i >= j}; an involution.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j as u32).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Containment of Young diagrams (mu <= lambda partwise).
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// All partitions fitting inside a `rows x cols` box, deterministic order.
    pub fn all_in_box(rows: u32, cols: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        fn rec(out: &mut Vec<Partition>, cur: &mut Vec<u32>, rows: u32, max: u32) {
            if rows == 0 {
                return;
            }
            for p in (1..=max).rev() {
                cur.push(p);
                out.push(Partition { parts: cur.clone() });
                rec(out, cur, rows - 1, p);
                cur.pop();
            }
        }
        let mut cur = vec![];
        rec(&mut out, &mut cur, rows, cols);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// A skew diagram lambda/mu with mu contained in lambda.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SkewDiagram {
    pub lambda: Partition,
    pub mu: Partition,
}

impl SkewDiagram {
    pub fn new(lambda: Partition, mu: Partition) -> Result<Self, Error> {
        if !lambda.contains(&mu) {
            return Err(Error::InvalidSkew(format!(
                "mu = ({mu}) is not contained in lambda = ({lambda})"
            )));
        }
        Ok(SkewDiagram { lambda, mu })
    }

    /// Straight shape lambda/().
    pub fn straight(lambda: Partition) -> Self {
        SkewDiagram {
            lambda,
            mu: Partition::empty(),
        }
    }

    /// Cells (i, j), 1-based, row i, column j, in row-major order.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = vec![];
        for i in 0..self.lambda.len() {
            for j in self.mu.part(i) + 1..=self.lambda.part(i) {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    pub fn num_cells(&self) -> usize {
        (self.lambda.sum() - self.mu.sum()) as usize
    }

    /// Max over columns of the column height lambda'_j - mu'_j.
    pub fn depth(&self) -> u32 {
        let lc = self.lambda.conjugate();
        let mc = self.mu.conjugate();
        (0..lc.len())
            .map(|j| lc.part(j) - mc.part(j))
            .max()
            .unwrap_or(0)
    }

    /// The positivity condition: lambda'_{i+1} - mu'_i <= n for i = 1..l-1,
    /// where l = lambda_1 indexes columns.
    pub fn positivity_condition(&self, n: u8) -> bool {
        let lc = self.lambda.conjugate();
        let mc = self.mu.conjugate();
        let l = self.lambda.part(0) as usize;
        (1..l).all(|i| lc.part(i) as i64 - mc.part(i - 1) as i64 <= n as i64)
    }

    /// Number of rows lambda'_1 and columns lambda_1.
    pub fn num_rows(&self) -> u32 {
        self.lambda.len() as u32
    }

    pub fn num_cols(&self) -> u32 {
        self.lambda.part(0)
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_empty() {
            write!(f, "{}", self.lambda)
        } else {
            write!(f, "{}/{}", self.lambda, self.mu)
        }
    }
}

impl FromStr for SkewDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (l, m) = match s.split_once('/') {
            Some((l, m)) => (l, m),
            None => (s, ""),
        };
        SkewDiagram::new(l.parse()?, m.parse()?)
    }
}
