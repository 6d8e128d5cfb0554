//! Median-graph geometry of cube complexes, progressing automata, and a
//! random-group laboratory.
//!
//! The crate is organised around a few layers:
//!
//! * [`median`] — finite median graphs (1-skeleta of cube complexes):
//!   validation, hyperplanes, halfspaces, medians, subdivision.
//! * [`complex`] / [`action`] — windows onto (possibly infinite) cube
//!   complexes and free-group actions on them.
//! * [`partition`] — the forward/backward/parallel split of the generators
//!   relative to a wall and a word.
//! * [`automaton`] — automata over a symmetric alphabet, checkpoint trees,
//!   growth certificates, progression verification, reduced-word rewiring.
//! * [`builder`] — the constructive machinery that assembles progressing
//!   automata from an action: branching tables, easy extensions, crossing
//!   trees, generator descent.
//! * [`randgrp`] — density-model samplers, language density, intersection
//!   experiments, small-cancellation checking, presentation assembly.
//! * [`cli`] — the `cubefix` command-line front end.

pub mod action;
pub mod automaton;
pub mod builder;
pub mod census;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod io;
pub mod letters;
pub mod median;
pub mod partition;
pub mod randgrp;
pub mod rat;
pub mod report;
pub mod rng;

pub use letters::{Alphabet, Letter, Word};
pub use rat::Q;
