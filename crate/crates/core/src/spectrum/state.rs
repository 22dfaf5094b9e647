use std::fs;
use std::path::Path;

use super::SpectrumState;
use crate::error::{Error, Result};

pub const STATE_VERSION: u32 = 1;

pub fn save_state(state: &SpectrumState, path: &Path) -> Result<()> {
    let text = serde_json::to_string(state).map_err(|e| Error::Io(e.to_string()))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_state(path: &Path) -> Result<SpectrumState> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::CorruptState(e.to_string()))?;
    let found = value
        .get("version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::CorruptState("missing version".into()))?;
    if found != STATE_VERSION as u64 {
        return Err(Error::StateVersion {
            found: found as u32,
            expected: STATE_VERSION,
        });
    }
    serde_json::from_value(value).map_err(|e| Error::CorruptState(e.to_string()))
}
