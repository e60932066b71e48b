def get_readable_time(seconds: float) -> str:
    """Elapsed run time as '2h: 5m: 1s', or in milliseconds below one second."""
    if seconds < 1:
        return f"{round(seconds * 1000)}ms"
    minutes, secs = divmod(int(seconds), 60)
    hours, minutes = divmod(minutes, 60)
    days, hours = divmod(hours, 24)
    clock = [(hours, "h"), (minutes, "m"), (secs, "s")]
    while len(clock) > 1 and clock[0][0] == 0:
        clock.pop(0)
    readable = ": ".join(f"{value}{suffix}" for value, suffix in clock)
    return f"{days} days, {readable}" if days else readable
