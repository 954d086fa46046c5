//! On-disk memo of Lambda matrices, one JSON file per level.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Context;
use oddcong::eta::LambdaMapJson;
use oddcong::{lambda_map, LambdaMap, Level};

fn path_for(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("lambda_{n}.json"))
}

/// `Lambda` for `level`, read from `dir` when a valid entry exists and
/// written there otherwise. An unreadable or inconsistent entry is
/// replaced.
pub fn lambda(level: &Arc<Level>, dir: Option<&Path>) -> anyhow::Result<LambdaMap> {
    let Some(dir) = dir else {
        return Ok(lambda_map(level)?);
    };
    let path = path_for(dir, level.n());
    if let Ok(text) = fs::read_to_string(&path) {
        let cached = serde_json::from_str::<LambdaMapJson>(&text)
            .map_err(anyhow::Error::from)
            .and_then(|j| {
                if j.n != level.n() {
                    anyhow::bail!("entry is for level {}", j.n);
                }
                Ok(LambdaMap::from_json(&j)?)
            });
        match cached {
            Ok(map) => return Ok(map),
            Err(e) => eprintln!("warning: ignoring cache entry {}: {e}", path.display()),
        }
    }
    let map = lambda_map(level)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let text = serde_json::to_string_pretty(&map.to_json())?;
    fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(map)
}
