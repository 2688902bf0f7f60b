mod classfn;
mod symmetric;
mod table;

pub use classfn::{add_fixed_point, classes, identity_type, ClassFunction, Classes};
pub use symmetric::sn_character;
pub use table::{irreducible_table, irreducible_table_with_twist, CharacterTable, TableJson};
