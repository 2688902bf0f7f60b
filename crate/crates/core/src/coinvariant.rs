//! The coinvariant algebra C[x]/⟨e_d(x^r)⟩ of W(r,n): the substitution action,
//! lex normal forms, descent monomials, graded traces and the descent filtration.

mod descent;
mod ideal;
mod poly;

pub use descent::{
    degree_minimality_witness, descent_basis, descent_basis_check, descent_monomial, filtration_characters,
    flag_statistics, graded_trace, graded_trace_multi, graded_trace_witness, tableau_flags, tableau_side_trace,
    tableau_side_trace_multi, BasisReport, DescentBasis, FiltrationReport, FlagStatistics, FlagVariant,
    GradingStatistic, MultiGraded, DEFAULT_BASIS_BUDGET,
};
pub use ideal::{artin_box, invariant_generators, monomials_of_degree, normal_form, reducers};
pub use poly::{act, act_monomial, Monomial, PolyCyclo};
