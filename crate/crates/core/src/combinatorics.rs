mod counting;
mod partition;
mod tableau;

pub use counting::{
    binomial, binomial_transform_check, column_descent_distribution, column_semistandard_count, column_transform_check,
    descent_distribution, in_column_support, in_row_support, m_count, mbar_count, row_semistandard_count,
    ColumnTransformCheck, TransformCheck,
};
pub use partition::{multipartitions, partitions, Cell, Multipartition, Partition};
pub use tableau::{standard_tableaux, BoundaryConvention, StandardTableau};
