//! Output formats: PlantUML class-diagram text and the canonical model file.

mod diagram;
mod model_file;

pub use diagram::to_diagram_text;
pub use model_file::{read_model, write_model, ModelFileError, MODEL_FORMAT};
