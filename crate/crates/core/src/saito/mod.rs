//! Directions, the `δ`-sequence and `p`-vector of a resolution with their
//! combinatorial properties, the numbered dual tree, and an exact
//! linear-algebra oracle for forms tangent to a branch.

mod combi;
mod forms;
mod oracle;

pub use combi::{
    check_combinatorial_properties, delta_p_data, delta_sequence, direction_attachments, foliation_mult_identity,
    numbered_dual_tree, p1_table_crosscheck, p_vector, round_trip_holds, trace_with_direction, v_vector,
    ComponentWitness, DeltaPData, FoliationIdentity, MinusOneCase, MinusOneEntry, NumberedDualTree, Numbering,
    PropertyReport, TreeVertex,
};
pub use forms::OneForm;
pub use oracle::{
    check_saito_criterion, curve_valuation, default_bounds, direction_equation, min_saito_valuation, saito_basis,
    verify_generic_minimum, verify_minimum, CriterionReport, GenericInstance, GenericMinimumReport, Route,
    SaitoBasis, SaitoBounds, SaitoCurve, SaitoMinimum,
};
