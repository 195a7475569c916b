use std::io::Read;

use vgg_core::{Error, GameInstance, Result};

/// Reads a file, or stdin for `None` and `-`.
pub fn read_text(path: Option<&str>) -> Result<String> {
    match path {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::InvalidArgument(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {p}: {e}"))),
    }
}

pub fn read_instance(path: Option<&str>) -> Result<GameInstance> {
    GameInstance::from_json(&read_text(path)?)
}

pub fn write_text(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {path}: {e}")))
}
