//! Binary hyperdimensional computing with random, level, and circular
//! basis-hypervectors.
//!
//! The crate is organized around the lifecycle of an HDC experiment:
//!
//! * [`hv`] packs binary hypervectors into machine words and implements
//!   binding, bundling, permutation, and Hamming similarity;
//! * [`basis`] generates the basis-hypervector sets that anchor encodings,
//!   including the interpolation hyperparameter `r` that trades correlation
//!   preservation against information content;
//! * [`markov`] solves for the expected number of random bit flips until a
//!   target distance is reached, the numeric oracle behind distance tuning;
//! * [`encode`] quantizes scalars, angles, symbols, records, and tuples
//!   into the hyperspace;
//! * [`learn`] trains nearest-prototype classifiers and bind-bundle
//!   regression memories;
//! * [`data`] ingests CSV datasets, synthesizes circular benchmark tasks,
//!   splits them, and scores predictions.

pub mod basis;
pub mod data;
pub mod encode;
pub mod error;
pub mod hv;
pub mod learn;
pub mod markov;
pub mod rng;

pub use basis::{
    angular_distance, generate_circular_set, generate_level_set, generate_level_set_interpolated,
    generate_random_set, BasisKind, BasisSet, TransitionList,
};
pub use encode::{AngleQuantizer, LabelCodec, ScalarQuantizer, SymbolTable, UniformGrid};
pub use error::{Error, Result};
pub use hv::{
    bind, bundle, hamming_distance, permute, similarity, BundleAccumulator, Hypervector,
};
pub use learn::{
    classify, predict, train_classifier, train_regressor, ClassificationModel, RegressionModel,
};
