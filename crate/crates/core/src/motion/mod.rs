//! Motion planning on digital images: paths and spiders, checking covers
//! and rules for `TC`, `TC_n` and `cat`, searching rules, and group
//! structures.

mod cat;
mod curve;
mod group;
mod path;
mod search;
mod section;

pub use cat::{cat_one, verify_cat_witness, CatFailure, CatWitness};
pub use curve::{curve_witness, cyclic_order};
pub use group::{group_check, tcn_upper_via_group, GroupBoundError, GroupFailure, GroupTable};
pub use path::{paths_adjacent, spiders_adjacent, synchronize, DigitalPath, PathAdjacency, Spider};
pub use search::{
    find_slice_obstruction, section_from_contraction, spider_rule_from_contraction,
    synthesize_section, synthesize_spider_section, synthesize_tcn_rule, tc_is_one, NotOne,
    SliceObstruction, SynthesisOptions, SynthesisOutcome, TcOne,
};
pub use section::{
    all_tuples, tuple_neighbors, tuples_adjacent, verify_cover, verify_section,
    verify_spider_section, verify_tc_witness, verify_tcn_witness, verify_tcn_witness_with,
    SectionFailure, SectionPart, TcWitness, TcnWitness, WitnessFailure,
};
