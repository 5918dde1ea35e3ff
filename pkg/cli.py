from app.main import run
from app.utils import get_logger

log = get_logger(__name__)

if __name__ == "__main__":
    log.debug("Running CLI")
    run()
