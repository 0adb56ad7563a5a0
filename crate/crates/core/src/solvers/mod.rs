//! Constructive solvers: backward induction on acyclic games and the
//! attractor solution of two-person win/lose games.

mod attractor;
mod backward_induction;

pub use attractor::{zero_sum_attractor, AttractorSolution, WinAssignment};
pub use backward_induction::{backward_induction, BackwardInduction};
