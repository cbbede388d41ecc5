"""Integration tests for Little Big Data.""" 