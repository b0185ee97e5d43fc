//! Automorphic conjugacy classes in the free group of rank two.
//!
//! Words are written over `a`, `b`, `A` (`a⁻¹`) and `B` (`b⁻¹`). The crate
//! reduces words to minimal length with Whitehead automorphisms, builds the
//! graph of minimal words of a class joined by level one-letter
//! automorphisms, classifies it, and enumerates every class of a given
//! minimal length.
//!
//! ```
//! use f2orbit_core::{build_graph, minimize, CyclicWord, GraphType};
//!
//! let w: CyclicWord = "ababbb".parse()?;
//! let m = minimize(&w);
//! assert_eq!(m.word.len(), 4);
//! assert_eq!(build_graph(&m.word)?.graph_type(), GraphType::R5);
//! # Ok::<(), f2orbit_core::Error>(())
//! ```

pub mod automorphism;
pub mod census;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod minimality;
pub mod word;

pub use automorphism::{
    apply_cyclic, apply_whitehead, canonical_mod_j, canonical_with_witness, conjugate_by_perm, principal_of,
    triangle_decompose, Automorphism, JCanonicalForm, OneLetterAut, Permutation, TriangleIdentity, WhiteheadII,
};
pub use census::{census, conjecture_report, expected_class_size, CensusRow, CensusTables, ConjectureReport};
pub use enumeration::{enumerate_classes, enumerate_classes_detailed, enumerate_minimal, ClassRecord, EnumeratedClass};
pub use error::{Error, Result};
pub use graph::{build_graph, ClassGraph, Edge, GraphType};
pub use minimality::{
    are_conjugate, is_level, is_level_direct, is_minimal, is_minimal_definitional, is_root, level_profile, minimize,
    minimize_word, replay, Conjugacy, LevelProfile, Minimization, WitnessStep,
};
pub use word::{
    cyclic_reduce, free_reduce, is_alternating, letter_count, m_value, pair_counts, subword_count, weight, CyclicWord,
    Letter, SubwordCounts, Word,
};
