//! Finite-scale kernel for ordered universal algebra over Pos: posets and
//! monotone maps with coinserters, prekernel pairs and factorizations;
//! ordered algebras with quotients and a Birkhoff-style membership search;
//! inequational saturation with replayable derivation certificates; free
//! ordered algebras, discrete Lawvere theories and their models; and a
//! laboratory of colimit laws (reflexive pairs, split coequalizers, sifted
//! commutation) verified by brute-force universal-property oracles.

pub mod algebra;
pub mod colimit;
pub mod derivation;
pub mod enumerate;
pub mod free;
pub mod hsp;
pub mod iso;
pub mod poset;
pub mod saturate;
pub mod term;
pub mod theory;
pub mod universe;
pub mod verify;
