use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered, disjoint groups of mode indices (subsystems `A`, `B`, `C`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModePartition {
    groups: Vec<Vec<usize>>,
}

impl ModePartition {
    /// Checks disjointness and that every index is below `n_modes`.
    /// Empty groups are allowed; whether they make sense is up to the caller.
    pub fn new(groups: Vec<Vec<usize>>, n_modes: usize) -> Result<Self> {
        let mut seen = vec![false; n_modes];
        for g in &groups {
            for &k in g {
                if k >= n_modes {
                    return Err(Error::Partition(format!("mode {k} out of range for {n_modes} modes")));
                }
                if seen[k] {
                    return Err(Error::Partition(format!("mode {k} appears twice")));
                }
                seen[k] = true;
            }
        }
        Ok(Self { groups })
    }

    /// Two groups covering all `n_modes` modes, both non-empty.
    pub fn bipartition(a: Vec<usize>, b: Vec<usize>, n_modes: usize) -> Result<Self> {
        let p = Self::new(vec![a, b], n_modes)?;
        p.require_bipartition(n_modes)?;
        Ok(p)
    }

    /// Parses `"0,1;2"` style strings: groups separated by `;`, indices by `,`.
    pub fn parse(text: &str, n_modes: usize) -> Result<Self> {
        let mut groups = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                groups.push(Vec::new());
                continue;
            }
            let mut g = Vec::new();
            for tok in part.split(',') {
                let k = tok
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Partition(format!("bad mode index {tok:?}")))?;
                g.push(k);
            }
            groups.push(g);
        }
        Self::new(groups, n_modes)
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, i: usize) -> &[usize] {
        &self.groups[i]
    }

    pub fn covers(&self, n_modes: usize) -> bool {
        self.groups.iter().map(Vec::len).sum::<usize>() == n_modes
    }

    pub(crate) fn require_bipartition(&self, n_modes: usize) -> Result<()> {
        if self.groups.len() != 2 || self.groups.iter().any(Vec::is_empty) || !self.covers(n_modes) {
            return Err(Error::Partition("expected two non-empty groups covering every mode".into()));
        }
        Ok(())
    }
}
