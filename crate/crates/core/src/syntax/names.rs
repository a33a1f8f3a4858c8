use std::fmt;

use serde::{Deserialize, Serialize};

/// Prefix of names the engine invents (normalization names, tableau
/// individuals, the goal name). The parser rejects user names carrying it.
pub const RESERVED_PREFIX: &str = "_:";

pub const TOP_TOKEN: &str = "owl:Thing";
pub const BOTTOM_TOKEN: &str = "owl:Nothing";

macro_rules! name_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(name: impl Into<String>) -> Self {
                let name = name.into();
                debug_assert!(!name.is_empty() && !name.contains(char::is_whitespace));
                $name(name)
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            /// True for names the engine generated itself.
            pub fn is_reserved(&self) -> bool {
                self.0.starts_with(RESERVED_PREFIX)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.is_reserved() {
                    f.write_str(&self.0)
                } else {
                    write!(f, ":{}", self.0)
                }
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name::new(s)
            }
        }
    };
}

name_type!(
    /// A concept (class) name.
    ConceptName
);
name_type!(
    /// A role (object property) name.
    RoleName
);
name_type!(
    /// An individual name.
    IndividualName
);
