use serde::de::DeserializeOwned;

use crate::error::{Error, Result};

/// Deserializes JSON, reporting failures with the JSON pointer of the offending value.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        use serde_path_to_error::Segment;
        let mut pointer = String::new();
        for segment in e.path().iter() {
            match segment {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => pointer.push_str(&format!("/{key}")),
                Segment::Enum { variant } => pointer.push_str(&format!("/{variant}")),
                Segment::Unknown => pointer.push_str("/?"),
            }
        }
        if pointer.is_empty() {
            pointer.push('/');
        }
        Error::input(format!("at {pointer}: {}", e.inner()))
    })
}

pub fn read_to_string(path: &std::path::Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}
