use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "whitney.report.v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Decision,
    BoundExhausted,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Decision => 0,
            Status::BoundExhausted => 2,
            Status::Error => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Decision => "decision",
            Status::BoundExhausted => "bound_exhausted",
            Status::Error => "error",
        }
    }
}

/// The outcome of one command: text lines for humans and fields for `--json`.
pub struct Report {
    command: String,
    status: Status,
    lines: Vec<String>,
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.into(), status: Status::Decision, lines: Vec::new(), fields: Map::new() }
    }

    pub fn error(command: &str, msg: &str) -> Report {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.lines.push(format!("error: {}", msg));
        r.fields.insert("error".into(), json!(msg));
        r
    }

    pub fn status(&mut self, s: Status) -> &mut Self {
        self.status = s;
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn field(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), v.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let v = json!({
                "schema": SCHEMA,
                "command": self.command,
                "status": self.status.name(),
                "result": Value::Object(self.fields.clone()),
            });
            let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
            s.push('\n');
            s
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}
