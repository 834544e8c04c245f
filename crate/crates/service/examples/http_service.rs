// Serve an index over HTTP on an ephemeral port and query a few endpoints
// with a bare-bones client.

use std::error::Error;
use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::path::PathBuf;
use std::sync::Arc;

use emolit_core::{DensityConfig, EmotionLexicon};
use emolit_service::http::{bind, serve, AppState};
use emolit_service::store::Index;

fn demo_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples/data")
}

fn get(addr: SocketAddr, path: &str) -> std::io::Result<String> {
    let mut stream = TcpStream::connect(addr)?;
    write!(stream, "GET {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n")?;
    let mut response = String::new();
    stream.read_to_string(&mut response)?;
    Ok(response)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let lexicon = Arc::new(EmotionLexicon::from_path(demo_data().join("demo_lexicon.tsv"))?);
    let mut index = Index::create(dir.path().join("index"), lexicon, DensityConfig::default())?;
    index.ingest(&demo_data().join("tales"), "tales")?;

    let rt = tokio::runtime::Runtime::new()?;
    let listener = rt.block_on(bind("127.0.0.1:0".parse()?))?;
    let addr = listener.local_addr()?;
    rt.spawn(serve(listener, AppState::new(index, false)));
    println!("serving on http://{addr}");

    for path in [
        "/collections/tales/ranking?category=fear",
        "/texts/the-tinker-and-the-moon/timeline?window=120&stride=60&categories=joy,fear",
        "/texts/no-such-tale/profile",
    ] {
        let response = get(addr, path)?;
        let status = response.lines().next().unwrap_or_default();
        let body = response.split("\r\n\r\n").nth(1).unwrap_or_default();
        println!("\nGET {path}\n{status}\n{body}");
    }
    rt.shutdown_background();
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
