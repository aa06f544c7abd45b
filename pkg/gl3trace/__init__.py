# Проверка дискретной формулы следа для GL3 над конечными полями
