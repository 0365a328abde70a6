//! k-Stirling permutations, increasing (k+1)-ary forests, the group action
//! on young leaves, and the bijections between them.
//!
//! Everything works on exact integers. Enumerations are guarded by
//! [`Limits`] so a caller never starts a job that cannot finish.

pub mod bimap;
pub mod error;
pub mod forest;
pub mod gfs;
pub mod limits;
pub mod oracle;
pub mod pipeline;
pub mod poly;
pub mod stirling;

pub use bimap::{chi, chi_inv, xi, xi_inv, zeta, zeta_inv};
pub use error::{Error, Result};
pub use forest::{
    classify_label, enumerate_forests, enumerate_forests_n, enumerate_trees_n, forest_class,
    forest_stats, is_bar, label_sets, parse_forest, parse_tree, removable_labels,
    serialize_forest, shape_stats, validate_forest, Forest, ForestClass, ForestStats, LabelSets,
    LabeledTree, NodeClass, RemovableLabels, Violation,
};
pub use gfs::{
    is_x_bar, is_x_hat, is_x_type, is_y_bar, is_y_hat, is_y_type, orbit, orbit_representative,
    phi, phi_set, theta, theta_prime, MarkedForest, PhiAction,
};
pub use limits::{stirling_count, Limits};
pub use oracle::{
    distribution, gamma_census_bar_hat, gamma_census_tilde, run_cells, run_suite, summary_table,
    Family, GammaCensus, IdentityReport, Statistic, Suite,
};
pub use pipeline::{
    alpha_step, beta_move, beta_step, gamma_map, gamma_prime_map, gamma_prime_trajectory,
    main_bijection, psi, BetaMove, PsiCase,
};
pub use poly::{
    egf_one_over_k_eulerian, gamma_compose, gamma_expand, shape_properties, symmetric_decompose,
    GammaExpansion, IntPolynomial, RationalPolynomial, ShapeProperties, SymmetricDecomposition,
};
pub use stirling::{
    descent_polynomial, enumerate_k_stirling, exc_cyc_polynomial, perm_exc_cyc, stat_ap,
    stat_lap, word_class, ExcCyc, KStirlingWord, KStirlingWords, Permutation, WordClass,
    WordDefect,
};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
