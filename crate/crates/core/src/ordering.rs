//! Legal implementation orders: the anticommutation DAG and its front layer.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderingMode {
    /// Only front-layer rows may be implemented; the unitary is preserved.
    #[serde(rename = "preserve")]
    Preserving,
    /// Every remaining row is available; rows are treated as commuting.
    #[serde(rename = "modify")]
    Modifying,
}

impl OrderingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderingMode::Preserving => "preserve",
            OrderingMode::Modifying => "modify",
        }
    }
}

impl std::str::FromStr for OrderingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "preserve" | "preserving" => Ok(OrderingMode::Preserving),
            "modify" | "modifying" => Ok(OrderingMode::Modifying),
            other => Err(Error::Input(format!("unknown mode {other:?}"))),
        }
    }
}

/// Precedence graph over original row indices. An edge `u -> v` exists iff
/// `u` precedes `v` in the input and the two rows anticommute.
///
/// The edge lists are shared between clones; only the active set and the
/// in-degrees are copied.
#[derive(Clone, Debug)]
pub struct CommutationDag {
    successors: Arc<Vec<Vec<usize>>>,
    active: Vec<bool>,
    indegree: Vec<usize>,
    remaining: usize,
}

/// Pairwise O(K^2) construction over the word's rows in original order.
pub fn build_dag(w: &PauliWord) -> CommutationDag {
    let size = w.orig_indices().iter().max().map(|m| m + 1).unwrap_or(0);
    let mut rows: Vec<usize> = (0..w.len()).collect();
    rows.sort_by_key(|&pos| w.orig_index(pos));

    let mut successors = vec![Vec::new(); size];
    let mut indegree = vec![0; size];
    let mut active = vec![false; size];
    for (a, &pa) in rows.iter().enumerate() {
        let u = w.orig_index(pa);
        active[u] = true;
        for &pb in &rows[a + 1..] {
            if !w.row(pa).commutes_unchecked(w.row(pb)) {
                let v = w.orig_index(pb);
                successors[u].push(v);
                indegree[v] += 1;
            }
        }
    }
    CommutationDag {
        successors: Arc::new(successors),
        active,
        indegree,
        remaining: w.len(),
    }
}

impl CommutationDag {
    pub fn len(&self) -> usize {
        self.remaining
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }

    pub fn is_active(&self, id: usize) -> bool {
        self.active.get(id).copied().unwrap_or(false)
    }

    pub fn indegree(&self, id: usize) -> usize {
        self.indegree[id]
    }

    pub fn active_nodes(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&i| self.active[i]).collect()
    }

    pub fn front_layer(&self) -> Vec<usize> {
        (0..self.active.len())
            .filter(|&i| self.active[i] && self.indegree[i] == 0)
            .collect()
    }

    /// Edges between active nodes.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.active_nodes() {
            for &v in &self.successors[u] {
                if self.active[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_removable(&self, id: usize, mode: OrderingMode) -> bool {
        self.is_active(id) && (mode == OrderingMode::Modifying || self.indegree[id] == 0)
    }

    /// Ascending row ids that may be implemented next.
    pub fn available_actions(&self, mode: OrderingMode) -> Vec<usize> {
        match mode {
            OrderingMode::Preserving => self.front_layer(),
            OrderingMode::Modifying => self.active_nodes(),
        }
    }

    pub fn remove(&mut self, id: usize, mode: OrderingMode) -> Result<()> {
        if !self.is_active(id) {
            return Err(Error::Contract(format!("row {id} is not active")));
        }
        if !self.is_removable(id, mode) {
            return Err(Error::Contract(format!(
                "row {id} is not in the front layer (in-degree {})",
                self.indegree[id]
            )));
        }
        self.active[id] = false;
        self.remaining -= 1;
        for &v in &self.successors[id] {
            if self.active[v] {
                self.indegree[v] -= 1;
            }
        }
        Ok(())
    }

    /// Removes a set of rows. In preserving mode rows are peeled off the front
    /// layer one at a time, so a set may include successors of its own members.
    pub fn remove_rows(&mut self, ids: &[usize], mode: OrderingMode) -> Result<()> {
        let mut pending: Vec<usize> = ids.to_vec();
        pending.sort_unstable();
        pending.dedup();
        if let Some(&bad) = pending.iter().find(|&&i| !self.is_active(i)) {
            return Err(Error::Contract(format!("row {bad} is not active")));
        }
        while !pending.is_empty() {
            let Some(k) = pending.iter().position(|&i| self.is_removable(i, mode)) else {
                return Err(Error::Contract(format!(
                    "rows {pending:?} cannot be removed before their predecessors"
                )));
            };
            let id = pending.remove(k);
            self.remove(id, mode)?;
        }
        Ok(())
    }
}

/// Returns a copy of `dag` with `ids` removed.
pub fn remove_rows(dag: &CommutationDag, ids: &[usize], mode: OrderingMode) -> Result<CommutationDag> {
    let mut out = dag.clone();
    out.remove_rows(ids, mode)?;
    Ok(out)
}

pub fn available_actions(dag: &CommutationDag, mode: OrderingMode) -> Vec<usize> {
    dag.available_actions(mode)
}
