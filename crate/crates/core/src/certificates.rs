//! Certificates shipped with the crate, in the formats of [`crate::io`].

macro_rules! certificates {
    ($($name:ident => $file:literal,)*) => {
        $(pub const $name: &str = include_str!(concat!("../certificates/", $file, ".txt"));)*

        /// File stems of all shipped certificates.
        pub const NAMES: &[&str] = &[$($file),*];

        /// Certificate text by file stem.
        pub fn get(name: &str) -> Option<&'static str> {
            match name {
                $($file => Some($name),)*
                _ => None,
            }
        }
    };
}

certificates! {
    INTERVAL_CAT => "interval_cat",
    INTERVAL_TC3 => "interval_tc3",
    MSC4_4_CONTRACTION => "msc4_4_contraction",
    MSC4_4_TWO_PART => "msc4_4_two_part",
    MSC4_8_CONTRACTION => "msc4_8_contraction",
    MSC4_8_GLOBAL => "msc4_8_global",
    MSS6_CONTRACTION => "mss6_contraction",
    RING8_OBSTRUCTION => "ring8_obstruction",
    RING8_TWO_PART => "ring8_two_part",
    SQUARE_CAT => "square_cat",
    SQUARE_CONTRACTION => "square_contraction",
    THETA_OBSTRUCTION => "theta_obstruction",
    THETA_TC2 => "theta_tc2",
    WEDGE_CONTRACTION => "wedge_contraction",
    WEDGE_GLOBAL => "wedge_global",
}
