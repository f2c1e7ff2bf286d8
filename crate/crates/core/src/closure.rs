//! Breadth-first enumeration of the matrix group generated by a finite set.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::poly::lcm_u64;
use crate::error::{Error, Result};
use crate::linear::{CycMatrix, MatrixKey};

pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureResult {
    /// The whole group was enumerated within the cap.
    pub finite: bool,
    /// Group order when `finite`, otherwise the number of elements found.
    pub order: usize,
    pub elements_explored: usize,
    pub cap_hit: bool,
}

/// Enumerate `<gens>` by right multiplication with the generators and their
/// inverses, stopping once more than `cap` elements are known.
pub fn enumerate_group(gens: &[CycMatrix], cap: usize) -> Result<ClosureResult> {
    enumerate_group_elements(gens, cap).map(|(r, _)| r)
}

/// As [`enumerate_group`], also returning the elements in discovery order.
pub fn enumerate_group_elements(
    gens: &[CycMatrix],
    cap: usize,
) -> Result<(ClosureResult, Vec<CycMatrix>)> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidParameter("no generators".into()));
    };
    let dim = first.dim();
    let conductor = gens.iter().fold(1, |acc, g| lcm_u64(acc, g.conductor()));
    let mut steps = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: g.dim(),
            });
        }
        let g = g.promote(conductor)?;
        let gi = g.inverse()?;
        steps.push(g);
        steps.push(gi);
    }

    let id = CycMatrix::identity(dim).promote(conductor)?;
    let mut seen: HashSet<MatrixKey> = HashSet::new();
    seen.insert(id.key());
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    let mut explored = 0usize;

    while !frontier.is_empty() {
        explored += frontier.len();
        let products: Vec<(MatrixKey, CycMatrix)> = frontier
            .par_iter()
            .flat_map_iter(|m| {
                steps.iter().map(move |s| {
                    let p = m.mul(s).expect("dimensions agree");
                    (p.key(), p)
                })
            })
            .collect();
        let mut next = Vec::new();
        for (key, p) in products {
            if seen.insert(key) {
                if elements.len() >= cap {
                    let order = elements.len() + 1;
                    return Ok((
                        ClosureResult {
                            finite: false,
                            order,
                            elements_explored: explored,
                            cap_hit: true,
                        },
                        elements,
                    ));
                }
                elements.push(p.clone());
                next.push(p);
            }
        }
        frontier = next;
    }
    Ok((
        ClosureResult {
            finite: true,
            order: elements.len(),
            elements_explored: explored,
            cap_hit: false,
        },
        elements,
    ))
}
