from slowapi import Limiter
from slowapi.util import get_remote_address

# Requests are keyed by client address; file uploads carry their own per-route limit
limiter = Limiter(key_func=get_remote_address)
