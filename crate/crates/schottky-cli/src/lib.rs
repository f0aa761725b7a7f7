//! Report types shared between the `schottky` binary and its tests.

pub mod report;
