//! Enumeration caps.
//!
//! Every exhaustive routine in the crate is gated by a configurable cap so
//! that accidental blow-ups surface as a capacity error instead of an
//! open-ended computation. The defaults are sized for desk-scale instances.

pub const DEFAULT_CUT_ENUM_CAP: usize = 20;
pub const DEFAULT_PARTITION_ENUM_CAP: usize = 12;
pub const DEFAULT_MATCHING_CAP: usize = 18;
pub const DEFAULT_TREE_ENUM_CAP: usize = 16;
pub const DEFAULT_BRUTEFORCE_EDGES_CAP: usize = 14;
pub const DEFAULT_UNIVERSAL_TPRIME_CAP: usize = 10;

/// Per-run enumeration limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Max vertex count for cut-side enumeration (2^(n-1) sides).
    pub cut_enum: usize,
    /// Max vertex count for set-partition enumeration (Bell(n) partitions).
    pub partition_enum: usize,
    /// Max terminal count for the subset-DP perfect matching.
    pub matching: usize,
    /// Max edge count for full spanning-tree enumeration.
    pub tree_enum: usize,
    /// Max edge count for the brute-force optimum search (3^m vectors).
    pub bruteforce_edges: usize,
    /// Max vertex count for checking membership over every even terminal set.
    pub universal_tprime: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cut_enum: DEFAULT_CUT_ENUM_CAP,
            partition_enum: DEFAULT_PARTITION_ENUM_CAP,
            matching: DEFAULT_MATCHING_CAP,
            tree_enum: DEFAULT_TREE_ENUM_CAP,
            bruteforce_edges: DEFAULT_BRUTEFORCE_EDGES_CAP,
            universal_tprime: DEFAULT_UNIVERSAL_TPRIME_CAP,
        }
    }
}
