use std::collections::HashSet;
use std::fs;
use std::path::{Component, Path, PathBuf};
use std::sync::Mutex;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkspaceError {
    #[error("path '{0}' escapes the workspace")]
    PathEscape(String),
    #[error("file not found: {0}")]
    NotFound(String),
    #[error("task already claimed done")]
    AlreadyDone,
    #[error("workspace for task '{0}' already exists in this run")]
    Collision(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn io_err(path: &Path, source: std::io::Error) -> WorkspaceError {
    WorkspaceError::Io { path: path.display().to_string(), source }
}

/// An isolated directory one episode reads and writes through the
/// workspace tools.
#[derive(Debug)]
pub struct Workspace {
    root: PathBuf,
    done_message: Option<String>,
}

impl Workspace {
    /// Opens (creating if needed) a workspace rooted at `root`.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, WorkspaceError> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(|e| io_err(&root, e))?;
        Ok(Workspace { root, done_message: None })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn is_done(&self) -> bool {
        self.done_message.is_some()
    }

    pub fn done_message(&self) -> Option<&str> {
        self.done_message.as_deref()
    }

    fn resolve(&self, rel: &str) -> Result<PathBuf, WorkspaceError> {
        let path = Path::new(rel);
        if rel.is_empty() {
            return Err(WorkspaceError::PathEscape(rel.to_string()));
        }
        for component in path.components() {
            match component {
                Component::Normal(_) | Component::CurDir => {}
                _ => return Err(WorkspaceError::PathEscape(rel.to_string())),
            }
        }
        Ok(self.root.join(path))
    }

    pub fn write_file(&mut self, rel: &str, content: &str) -> Result<(), WorkspaceError> {
        if self.is_done() {
            return Err(WorkspaceError::AlreadyDone);
        }
        let path = self.resolve(rel)?;
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
        }
        fs::write(&path, content).map_err(|e| io_err(&path, e))
    }

    pub fn read_file(&self, rel: &str) -> Result<String, WorkspaceError> {
        let path = self.resolve(rel)?;
        match fs::read(&path) {
            Ok(bytes) => Ok(String::from_utf8_lossy(&bytes).into_owned()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(WorkspaceError::NotFound(rel.to_string())),
            Err(e) => Err(io_err(&path, e)),
        }
    }

    /// Raw bytes of a file, or `None` when absent.
    pub fn file_bytes(&self, rel: &str) -> Option<Vec<u8>> {
        self.resolve(rel).ok().and_then(|p| fs::read(p).ok())
    }

    /// Sorted entry names; directories carry a trailing `/`.
    pub fn list_directory(&self, rel: &str) -> Result<Vec<String>, WorkspaceError> {
        let path = if rel.is_empty() || rel == "." { self.root.clone() } else { self.resolve(rel)? };
        let entries = match fs::read_dir(&path) {
            Ok(entries) => entries,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(WorkspaceError::NotFound(rel.to_string())),
            Err(e) => return Err(io_err(&path, e)),
        };
        let mut names = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|e| io_err(&path, e))?;
            let mut name = entry.file_name().to_string_lossy().into_owned();
            if entry.path().is_dir() {
                name.push('/');
            }
            names.push(name);
        }
        names.sort();
        Ok(names)
    }

    pub fn claim_done(&mut self, status: &str) -> Result<(), WorkspaceError> {
        if self.is_done() {
            return Err(WorkspaceError::AlreadyDone);
        }
        self.done_message = Some(status.to_string());
        Ok(())
    }
}

/// A run directory handing out one workspace per task id.
#[derive(Debug)]
pub struct RunDir {
    root: PathBuf,
    claimed: Mutex<HashSet<String>>,
}

impl RunDir {
    pub fn new(root: impl Into<PathBuf>) -> Result<Self, WorkspaceError> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(|e| io_err(&root, e))?;
        Ok(RunDir { root, claimed: Mutex::new(HashSet::new()) })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// `<run>/<task_id>/`
    pub fn task_dir(&self, task_id: &str) -> PathBuf {
        self.root.join(task_id)
    }

    /// Fresh, empty `<run>/<task_id>/workspace/`. Fails if the id was already
    /// handed out by this run.
    pub fn make_workspace(&self, task_id: &str) -> Result<Workspace, WorkspaceError> {
        if task_id.is_empty() || Path::new(task_id).components().any(|c| !matches!(c, Component::Normal(_))) {
            return Err(WorkspaceError::PathEscape(task_id.to_string()));
        }
        if !self.claimed.lock().expect("run dir lock").insert(task_id.to_string()) {
            return Err(WorkspaceError::Collision(task_id.to_string()));
        }
        let root = self.task_dir(task_id).join("workspace");
        if root.exists() {
            fs::remove_dir_all(&root).map_err(|e| io_err(&root, e))?;
        }
        Workspace::open(root)
    }
}
