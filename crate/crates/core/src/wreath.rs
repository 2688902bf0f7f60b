mod classes;
mod element;
mod rsk;

pub use classes::{
    centralizer_order, class_length, class_size, descent_histogram, eulerian, eulerian_row, ewens_normalizer,
    ewens_normalizer_closed, ewens_normalizer_printed, ewens_weight, factorial, group_order,
};
pub use element::{class_representative, elements, ColoredPermutation};
pub use rsk::{rsk, rsk_inverse};
