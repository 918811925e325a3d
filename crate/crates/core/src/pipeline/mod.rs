//! The staged route from a dense host to a loose Hamilton cycle.
//!
//! `exact` is the standalone backtracking solver. The remaining modules
//! are the constructive stages: an absorbing path that can swallow
//! leftover vertex pairs, a reservoir through which path ends are
//! connected, the connecting search itself, and `assemble`, which runs
//! the stages in order and emits either a validated cycle or a
//! structured failure report.

pub mod absorbing;
pub mod assemble;
pub mod connect;
pub mod exact;
pub mod reservoir;
