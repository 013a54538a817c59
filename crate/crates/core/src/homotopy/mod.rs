//! Digital homotopies: checking scripts and contraction certificates, and
//! searching for contractions.

mod script;
mod search;

pub use script::{
    verify_contraction, verify_homotopy, verify_inclusion_contraction, ContractionCertificate,
    HomotopyFailure, HomotopyScript,
};
#[allow(unused_imports)]
pub(crate) use search::{bfs_order, enumerate_maps, Enum};
pub use search::{
    find_contraction, find_contraction_with, find_inclusion_contraction, find_obstruction,
    verify_obstruction, ContractionSearch, RetractionObstruction, SearchOutcome, DEFAULT_BUDGET,
};
