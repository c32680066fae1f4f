//! Lace paths: step sequences that descend `height` rows with no net
//! horizontal displacement and never take two horizontal steps in a row.
//!
//! On the torus a lace path closes into a loop that meets the row-0 level
//! exactly once per period. It does so either at a vertex, where the path is
//! rooted at the row-0 vertex it leaves downward (first step non-horizontal),
//! or by passing over row 0 through the middle of a `<0,2>` step. The second
//! kind is rooted one row above, at the origin of that straddling step. Every
//! periodic path is produced exactly once under this rooting, and the counts
//! for heights 1..=5 are 3, 39, 498, 6667 and 91833.

use std::fmt;

use crate::error::LaceError;
use crate::geometry::{Arc, GridPos, StepVector, TorusDims};

/// Where a path is rooted relative to row 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Anchor {
    /// Starts at the row-0 vertex and leaves it with a non-horizontal step.
    Vertex,
    /// Starts at row `-1` with a `<0,2>` step whose midpoint is on row 0.
    Straddle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LacePath {
    steps: Vec<StepVector>,
    anchor: Anchor,
    height: u32,
}

impl LacePath {
    pub fn new(steps: Vec<StepVector>, height: u32, anchor: Anchor) -> Result<LacePath, LaceError> {
        if height == 0 {
            return Err(LaceError::InvalidHeight);
        }
        let path = LacePath {
            steps,
            anchor,
            height,
        };
        let straddle_ok = match anchor {
            Anchor::Vertex => true,
            Anchor::Straddle => path.steps.first() == Some(&StepVector::new(0, 2)?),
        };
        if !straddle_ok || !is_valid_lace_path(&path.steps, height) {
            return Err(LaceError::InvalidPath(path.to_string()));
        }
        Ok(path)
    }

    pub fn steps(&self) -> &[StepVector] {
        &self.steps
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Row offset of the first vertex relative to row 0.
    pub fn start_row(&self) -> i64 {
        match self.anchor {
            Anchor::Vertex => 0,
            Anchor::Straddle => -1,
        }
    }

    /// Arcs of the path laid on the torus with its root in column `start_col`.
    pub fn arcs(&self, dims: TorusDims, start_col: u32) -> Vec<Arc> {
        let mut at = GridPos {
            row: 0,
            col: start_col % dims.cols(),
        }
        .offset(self.start_row(), 0, dims);
        self.steps
            .iter()
            .map(|&step| {
                let arc = Arc::new(at, step);
                at = arc.head(dims);
                arc
            })
            .collect()
    }
}

impl fmt::Display for LacePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        if self.anchor == Anchor::Straddle {
            f.write_str(" straddle")?;
        }
        Ok(())
    }
}

/// Whether `steps` is a lace path of height `n` rooted at a vertex:
/// descends exactly `n` rows, returns to its starting column, starts with a
/// non-horizontal step and has no two adjacent horizontal steps (also across
/// the wrap from last step to first).
pub fn is_valid_lace_path(steps: &[StepVector], n: u32) -> bool {
    let Some(first) = steps.first() else {
        return false;
    };
    if first.is_horizontal() || steps.len() > 2 * n as usize {
        return false;
    }
    let dy: i64 = steps.iter().map(|s| s.dy() as i64).sum();
    let dx: i64 = steps.iter().map(|s| s.dx() as i64).sum();
    if dy != n as i64 || dx != 0 {
        return false;
    }
    let len = steps.len();
    len == 1 || !(0..len).any(|i| steps[i].is_horizontal() && steps[(i + 1) % len].is_horizontal())
}

/// Every lace path of height `n`, ordered by step sequence and then anchor.
pub fn generate_lace_paths(n: u32) -> Result<Vec<LacePath>, LaceError> {
    if n == 0 {
        return Err(LaceError::InvalidHeight);
    }
    let mut sequences = Vec::new();
    let mut current = Vec::with_capacity(2 * n as usize);
    extend(&mut current, n as i32, 0, &mut sequences);

    let long = StepVector::new(0, 2)?;
    let mut paths = Vec::with_capacity(sequences.len() * 11 / 10);
    for steps in sequences {
        let straddles = steps[0] == long;
        if straddles {
            paths.push(LacePath {
                steps: steps.clone(),
                anchor: Anchor::Vertex,
                height: n,
            });
            paths.push(LacePath {
                steps,
                anchor: Anchor::Straddle,
                height: n,
            });
        } else {
            paths.push(LacePath {
                steps,
                anchor: Anchor::Vertex,
                height: n,
            });
        }
    }
    Ok(paths)
}

fn extend(current: &mut Vec<StepVector>, remaining: i32, dx: i32, out: &mut Vec<Vec<StepVector>>) {
    if remaining == 0 && dx == 0 && !current.is_empty() {
        out.push(current.clone());
    }
    let last_horizontal = current.last().is_none_or(|s| s.is_horizontal());
    for step in StepVector::ALL {
        if step.dy() > remaining || (step.is_horizontal() && last_horizontal) {
            continue;
        }
        let rest = remaining - step.dy();
        let ndx = dx + step.dx();
        // each remaining row can undo at most 3 columns, plus one trailing horizontal
        if ndx.abs() > 3 * rest + 2 {
            continue;
        }
        current.push(step);
        extend(current, rest, ndx, out);
        current.pop();
    }
}
