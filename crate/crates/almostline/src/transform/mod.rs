//! Augmentation, external-face choice and the inner/outer split.

mod augment;
mod blocks;
mod lr;
mod maximal;
mod split;

use thiserror::Error;

use crate::plane::PlanarizeError;

pub use augment::augment;
pub use blocks::{block_cut_tree, BlockCutTree};
pub use lr::{
    build_lr, choose_external, face_regions, inconsistent_faces, FaceConsistency,
    FaceConsistencyReport, LRSubgraphs, SubGraph,
};
pub use maximal::{addable_edges, check_maximal, AddableEdge, MaximalReport};
pub use split::{
    initially_drawn, safe_block_order, safe_blocks, split, walk, BoundingEdges, Pocket, SideGraph,
    SplitDecomposition,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("inconsistent input: vertex {0} is both left and right")]
    Inconsistent(String),
    #[error("augmentation stalled before reaching a maximal graph")]
    Stalled,
    #[error("expected exactly one inconsistent face, found {0}")]
    ConsistencyViolated(usize),
    #[error("separating cycle is not simple")]
    CycleNotSimple,
    #[error("no safe block")]
    NoSafeBlock,
    #[error("graph is not maximal")]
    NotMaximal,
    #[error("external face required")]
    NoExternalFace,
    #[error("{0}")]
    Planarize(#[from] PlanarizeError),
}
