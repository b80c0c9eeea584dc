//! Uniform result records shared by the three `HH^{2,q}` pipelines.

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ginzburg,
    Trace,
    Zigzag,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ginzburg, Method::Trace, Method::Zigzag];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Ginzburg => "ginzburg",
            Method::Trace => "trace",
            Method::Zigzag => "zigzag",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ginzburg" => Ok(Method::Ginzburg),
            "trace" => Ok(Method::Trace),
            "zigzag" => Ok(Method::Zigzag),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// `dim HH^{p,q}` as computed by one method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHReport {
    pub p: i64,
    pub q: i64,
    pub method: Method,
    pub dimension: usize,
    /// Rendered cycles spanning the answer, when the method produces them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<String>>,
}
