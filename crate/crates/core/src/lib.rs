//! Skill-library runtime and benchmark simulator.
//!
//! Agents compose atomic tool calls into verified, cached, reusable skills
//! written in a small sandboxed script language. The crate provides the
//! interpreter, deterministic simulated tool backends, the skill library and
//! its verifier, the scaled task suite with rubric scoring, synthetic agent
//! policies for every execution mode, and the run harness.

pub mod fabric;
pub mod harness;
pub mod library;
pub mod policy;
pub mod script;
pub mod suite;
pub mod value;

pub use value::{Record, Value};
