from fastapi import FastAPI
from slowapi import _rate_limit_exceeded_handler
from slowapi.errors import RateLimitExceeded
from .api import register_routes
from .config.core import get_settings
from .my_logging import configure_logging
from .rate_limiter import limiter


configure_logging(get_settings().log_level)

app = FastAPI(title="Time series components")
app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)

register_routes(app)
